#pragma once

#include <stdexcept>
#include <string>

namespace geokit {

// Base class for all geokit failures so callers can catch the library's
// errors without also swallowing unrelated std exceptions.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument outside its documented domain (t outside [0,1], i == j, ...).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Query point lies exactly on the curve/segment being tested.
class OnBoundary : public Error {
public:
    explicit OnBoundary(const std::string& msg) : Error(msg) {}
};

// A query segment coincides with a stretch of the curve: the intersection
// set is a continuum and cannot be counted.
class OverlapIntersection : public Error {
public:
    explicit OverlapIntersection(const std::string& msg) : Error(msg) {}
};

class RefinementLimitExceeded : public Error {
public:
    explicit RefinementLimitExceeded(const std::string& msg) : Error(msg) {}
};

class CrossingCurves : public Error {
public:
    explicit CrossingCurves(const std::string& msg) : Error(msg) {}
};

class MergeFailure : public Error {
public:
    explicit MergeFailure(const std::string& msg) : Error(msg) {}
};

class BisectorMiss : public Error {
public:
    explicit BisectorMiss(const std::string& msg) : Error(msg) {}
};

class SplitDepthExceeded : public Error {
public:
    explicit SplitDepthExceeded(const std::string& msg) : Error(msg) {}
};

class NonPositiveDepth : public Error {
public:
    explicit NonPositiveDepth(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// A pipeline stage failed; the message carries the stage name and the
// offending curve serialized as JSON so the case can be replayed.
class PipelineError : public Error {
public:
    explicit PipelineError(const std::string& msg) : Error(msg) {}
};

}  // namespace geokit
