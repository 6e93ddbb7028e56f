#ifndef SOO_ERRORS_HPP
#define SOO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace soo {

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class InvalidBounds : public Error
{
public:
    using Error::Error;
};

class InvalidParams : public Error
{
public:
    using Error::Error;
};

/// The evaluation budget cannot cover the requested work. Nothing was evaluated.
class BudgetExhausted : public Error
{
public:
    using Error::Error;
};

class OutOfBounds : public Error
{
public:
    using Error::Error;
};

class NotALeaf : public Error
{
public:
    using Error::Error;
};

class UnknownFunction : public Error
{
public:
    using Error::Error;
};

class BadDimension : public Error
{
public:
    using Error::Error;
};

class UnpulledArm : public Error
{
public:
    using Error::Error;
};

/// Every evaluated point returned a non-finite value.
class ObjectiveDegenerate : public Error
{
public:
    using Error::Error;
};

} // namespace soo

#endif
