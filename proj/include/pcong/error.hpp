#pragma once

#include <stdexcept>
#include <string>

namespace pcong {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Coefficient requested at or beyond a series' truncation bound.
class TruncationError : public Error {
public:
    using Error::Error;
};

class RingError : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// Raised before a large allocation when the configured memory budget would be exceeded.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, std::size_t estimate, std::size_t budget)
        : Error(what + ": estimated " + std::to_string(estimate) + " bytes exceeds budget of " +
                std::to_string(budget) + " bytes"),
          estimate_(estimate), budget_(budget) {}

    std::size_t estimate() const noexcept { return estimate_; }
    std::size_t budget() const noexcept { return budget_; }

private:
    std::size_t estimate_;
    std::size_t budget_;
};

} // namespace pcong
