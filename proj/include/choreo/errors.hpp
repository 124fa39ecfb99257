#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace choreo {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A parameter is outside its mathematical domain (sigma not in (0,1), M < 2, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A function was evaluated at a non-integrable point (mu at s = 0, ...).
class SingularityError : public Error {
public:
    using Error::Error;
};

// Quadrature failed to converge across refinements.
class QuadratureError : public Error {
public:
    using Error::Error;
};

// Two bodies (or two quadrature points on a loop) closer than the collision floor.
class CollisionError : public Error {
public:
    CollisionError(const std::string& what, std::size_t i, std::size_t j, double dist)
        : Error(what), body_i(i), body_j(j), distance(dist) {}
    std::size_t body_i;
    std::size_t body_j;
    double distance;
};

// Loop violates the regular-simple-closed-curve hypothesis of the PV force.
class DegenerateCurveError : public Error {
public:
    using Error::Error;
};

// Mismatched configuration between objects (spectrum vs loop sigma/K, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Two supposedly equivalent computation routes disagree beyond tolerance.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace choreo
