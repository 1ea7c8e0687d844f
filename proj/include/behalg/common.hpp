#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace behalg {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using Complex = std::complex<double>;

/// Failure categories. The CLI maps each one onto an exit code.
enum class ErrorKind {
    InvalidInput,           // malformed arguments, shape mismatch, non-finite data
    InvalidRepresentation,  // rank-deficient or otherwise unusable representation
    Precondition,           // argument outside the validity range of a formula
    InconsistentData,       // data does not come from an exact LTI model
    Uncontrollable,         // an image representation does not exist
    AlgorithmFailure,       // a bounded search did not terminate successfully
    NumericFailure,         // a verification residual exceeded its tolerance
};

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::InvalidRepresentation: return "invalid-representation";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::InconsistentData: return "inconsistent-data";
        case ErrorKind::Uncontrollable: return "uncontrollable";
        case ErrorKind::AlgorithmFailure: return "algorithm-failure";
        case ErrorKind::NumericFailure: return "numeric-failure";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

/// Thresholds for every numeric decision (rank, degree, subspace equality).
struct ToleranceConfig {
    double rel_rank_tol = 1e-10;
    double abs_floor = 1e-14;
    double subspace_eq_tol = 1e-8;
    double degree_trim_tol = 1e-10;

    void validate() const {
        if (!(rel_rank_tol > 0.0) || !(abs_floor > 0.0) || !(subspace_eq_tol > 0.0) ||
            !(degree_trim_tol > 0.0))
            fail(ErrorKind::InvalidInput, "tolerances must be strictly positive");
        if (!(rel_rank_tol < 1.0) || !(subspace_eq_tol < 1.0))
            fail(ErrorKind::InvalidInput, "rel_rank_tol and subspace_eq_tol must be below 1");
    }
};

template <class Derived>
bool all_finite(const Eigen::DenseBase<Derived>& m) {
    return m.allFinite();
}

}  // namespace behalg
