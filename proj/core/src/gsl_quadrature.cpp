#include "gsl_quadrature.hpp"

#include <mutex>

namespace qst::detail {

namespace {

double trampoline(double x, void* params)
{
    return (*static_cast<const std::function<double(double)>*>(params))(x);
}

void quiet_gsl()
{
    static std::once_flag once;
    std::call_once(once, [] { gsl_set_error_handler_off(); });
}

void require(int status, double error, const char* where)
{
    if (status != GSL_SUCCESS && status != GSL_EROUND)
        throw QuadratureError(std::string(where) + ": " + gsl_strerror(status), error);
}

}  // namespace

Integrator::Integrator(std::size_t limit) : limit_(limit), workspace_(gsl_integration_workspace_alloc(limit))
{
    if (!workspace_) throw std::bad_alloc();
    quiet_gsl();
}

QuadratureResult Integrator::finite(const std::function<double(double)>& f, double a, double b, double epsabs,
                                    double epsrel, int key)
{
    gsl_function fn{&trampoline, const_cast<std::function<double(double)>*>(&f)};
    QuadratureResult r{};
    const int status =
        gsl_integration_qag(&fn, a, b, epsabs, epsrel, limit_, key, workspace_.get(), &r.value, &r.error);
    require(status, r.error, "finite-interval quadrature");
    return r;
}

QuadratureResult Integrator::upper(const std::function<double(double)>& f, double a, double epsabs, double epsrel)
{
    gsl_function fn{&trampoline, const_cast<std::function<double(double)>*>(&f)};
    QuadratureResult r{};
    const int status = gsl_integration_qagiu(&fn, a, epsabs, epsrel, limit_, workspace_.get(), &r.value, &r.error);
    require(status, r.error, "semi-infinite quadrature");
    return r;
}

std::complex<double> Integrator::finite_complex(const std::function<std::complex<double>(double)>& f, double a,
                                                double b, double epsabs, double epsrel, double* error)
{
    const auto re = finite([&](double x) { return f(x).real(); }, a, b, epsabs, epsrel);
    const auto im = finite([&](double x) { return f(x).imag(); }, a, b, epsabs, epsrel);
    if (error) *error = re.error + im.error;
    return {re.value, im.value};
}

}  // namespace qst::detail
