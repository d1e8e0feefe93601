#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fode {

// Argument outside the mathematical domain (nu, x, sigma ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

class LengthError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Starting weights built for another grid or order.
class MismatchError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IllConditionedError : public std::runtime_error {
public:
    IllConditionedError(const std::string& what, double cond)
        : std::runtime_error(what), cond_(cond) {}
    double condition() const noexcept { return cond_; }

private:
    double cond_;
};

class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& what, std::size_t step, double residual)
        : std::runtime_error(what), step_(step), residual_(residual) {}
    std::size_t step() const noexcept { return step_; }
    double residual() const noexcept { return residual_; }

private:
    std::size_t step_;
    double residual_;
};

class SingularJacobianError : public std::runtime_error {
public:
    SingularJacobianError(const std::string& what, std::size_t step)
        : std::runtime_error(what), step_(step) {}
    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace fode
