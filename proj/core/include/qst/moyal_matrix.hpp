#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace qst::moyal {

using cplx = std::complex<double>;

struct BasisIndex {
    int m = 0;
    int n = 0;
    friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

// Coefficients g_mn of an element sum g_mn f_mn of the truncated matrix basis. Indices
// must stay below the truncation; nothing is projected silently.
class TruncatedElement {
public:
    TruncatedElement(int truncation, double theta);
    TruncatedElement(int truncation, double theta, std::vector<cplx> row_major);

    int truncation() const { return n_; }
    double theta() const { return theta_; }
    const std::vector<cplx>& coefficients() const { return data_; }

    cplx operator()(int m, int n) const { return data_[index(m, n)]; }
    void set(int m, int n, cplx value);

    TruncatedElement& operator+=(const TruncatedElement& o);
    TruncatedElement& operator-=(const TruncatedElement& o);
    TruncatedElement& operator*=(cplx s);
    friend TruncatedElement operator+(TruncatedElement a, const TruncatedElement& b) { return a += b; }
    friend TruncatedElement operator-(TruncatedElement a, const TruncatedElement& b) { return a -= b; }
    friend TruncatedElement operator*(cplx s, TruncatedElement a) { return a *= s; }

    // Largest coefficient modulus of the difference.
    double distance(const TruncatedElement& o) const;

    void require_same_space(const TruncatedElement& o) const;

private:
    int n_;
    double theta_;
    std::vector<cplx> data_;

    std::size_t index(int m, int n) const;
};

class MatrixBasis {
public:
    MatrixBasis(int truncation, double theta);

    int truncation() const { return n_; }
    double theta() const { return theta_; }

    // f_mn * f_kl = delta_nk f_ml
    std::optional<BasisIndex> product(BasisIndex a, BasisIndex b) const;
    BasisIndex dagger(BasisIndex a) const;

    TruncatedElement element(BasisIndex a, cplx coefficient = 1.0) const;
    TruncatedElement zero() const { return {n_, theta_}; }
    TruncatedElement unit() const;  // sum of f_mm, the unit inside the truncation

private:
    int n_;
    double theta_;

    void require(BasisIndex a) const;
};

TruncatedElement star(const TruncatedElement& a, const TruncatedElement& b);
TruncatedElement dagger(const TruncatedElement& a);
// Integral of a^dagger * b: 2 pi theta sum conj(a_mn) b_mn.
cplx trace_pairing(const TruncatedElement& a, const TruncatedElement& b);

struct PartitionReport {
    int truncation = 0;
    double positivity_error = 0.0;    // f_mm against f_m0 * f_m0^dagger
    double unity_error = 0.0;         // sum_m f_mm * g against g over the basis and random g
    double commutation_error = 0.0;   // diagonal elements commute pairwise
    double product_family_error = 0.0;  // the pairwise products again resolve the unit
    double passed_tolerance = 1e-13;
    bool passed() const;
};

// Partition-of-unity axioms for the diagonal family {f_mm}; membership is automatic and
// local finiteness is vacuous at finite truncation.
PartitionReport partition_check(int truncation, double theta = 1.0, int random_elements = 16,
                                std::uint64_t seed = 0);

}  // namespace qst::moyal
