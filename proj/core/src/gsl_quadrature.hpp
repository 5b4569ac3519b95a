#pragma once

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <complex>
#include <functional>
#include <memory>

#include "qst/quadrature.hpp"

namespace qst::detail {

// Adaptive Gauss-Kronrod from GSL with an owned workspace. GSL's global abort handler
// is disabled once so failures surface as QuadratureError.
class Integrator {
public:
    explicit Integrator(std::size_t limit = 2000);

    QuadratureResult finite(const std::function<double(double)>& f, double a, double b, double epsabs,
                            double epsrel, int key = GSL_INTEG_GAUSS61);
    QuadratureResult upper(const std::function<double(double)>& f, double a, double epsabs, double epsrel);
    std::complex<double> finite_complex(const std::function<std::complex<double>(double)>& f, double a, double b,
                                        double epsabs, double epsrel, double* error = nullptr);

private:
    struct Free {
        void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
    };
    std::size_t limit_;
    std::unique_ptr<gsl_integration_workspace, Free> workspace_;
};

}  // namespace qst::detail
