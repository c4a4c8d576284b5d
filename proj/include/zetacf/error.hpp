#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zetacf {

// Base for every error raised by the library. Callers that only care about
// "something in zetacf failed" catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ZeroDenominator : public Error {
public:
    ZeroDenominator() : Error("zero denominator") {}
};

class ZeroDivisor : public Error {
public:
    ZeroDivisor() : Error("division by the zero polynomial") {}
};

class NotDivisible : public Error {
public:
    explicit NotDivisible(const std::string& what) : Error("not divisible: " + what) {}
};

class DegenerateMap : public Error {
public:
    explicit DegenerateMap(const std::string& what) : Error("degenerate map: " + what) {}
};

class PoleError : public Error {
public:
    PoleError(long k, std::string x)
        : Error("pole at k=" + std::to_string(k) + ", x=" + x), k_(k), x_(std::move(x)) {}
    long k() const { return k_; }
    const std::string& x() const { return x_; }

private:
    long k_;
    std::string x_;
};

class DegenerateStep : public Error {
public:
    explicit DegenerateStep(const std::string& stage) : Error("degenerate step matrix in stage " + stage) {}
};

class HeadNotFlattenable : public Error {
public:
    explicit HeadNotFlattenable(const std::string& stage)
        : Error("head of stage " + stage + " is not of the form c + e/X or c*X + e") {}
};

class StageNotFlattenable : public Error {
public:
    explicit StageNotFlattenable(const std::string& stage)
        : Error("stage " + stage + " is not a pure level product") {}
};

class UnknownStage : public Error {
public:
    explicit UnknownStage(const std::string& stage) : Error("unknown stage: " + stage) {}
};

class DegenerateConvergent : public Error {
public:
    explicit DegenerateConvergent(std::size_t n)
        : Error("q_n = 0 at n=" + std::to_string(n)), n_(n) {}
    std::size_t n() const { return n_; }

private:
    std::size_t n_;
};

class InsufficientReferencePrecision : public Error {
public:
    explicit InsufficientReferencePrecision(const std::string& what)
        : Error("insufficient reference precision: " + what) {}
};

class InsufficientData : public Error {
public:
    explicit InsufficientData(const std::string& what) : Error("insufficient data: " + what) {}
};

class OracleDisagreement : public Error {
public:
    explicit OracleDisagreement(const std::string& what) : Error("oracle disagreement: " + what) {}
};

class DegenerateSigma : public Error {
public:
    explicit DegenerateSigma(const std::string& step) : Error("degenerate substitution in step " + step) {}
};

class ChainInconsistency : public Error {
public:
    ChainInconsistency(const std::string& step, const std::string& why)
        : Error("chain inconsistency in step " + step + ": " + why), step_(step) {}
    const std::string& step() const { return step_; }

private:
    std::string step_;
};

class InvalidScale : public Error {
public:
    explicit InvalidScale(const std::string& what) : Error("invalid scale: " + what) {}
};

class NoAlignmentFound : public Error {
public:
    NoAlignmentFound() : Error("no index offset pair in [-3,3]^2 aligns v = 1, 2, 3") {}
};

}  // namespace zetacf
