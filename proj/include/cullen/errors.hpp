#pragma once

#include <stdexcept>
#include <string>

namespace cullen {

// Every library failure derives from Error so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class DegenerateRecurrence : public Error {
public:
    using Error::Error;
};

class RatioUnit : public Error {
public:
    using Error::Error;
};

class IndexTooSmall : public Error {
public:
    using Error::Error;
};

class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class RangeTooLarge : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class CapEscalationFailed : public Error {
public:
    using Error::Error;
};

class TrialDivisionLimit : public Error {
public:
    using Error::Error;
};

// A mathematically impossible state was reached; indicates a bug.
class InternalContradiction : public Error {
public:
    using Error::Error;
};

}  // namespace cullen
