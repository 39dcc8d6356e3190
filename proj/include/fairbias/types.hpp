#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fairbias {

using InstanceId = std::uint64_t;

/// A metric value that may be undefined (empty denominator, missing group).
using MaybeReal = std::optional<double>;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input file missing or unreadable.
class InputError : public Error {
public:
    using Error::Error;
};

/// Bad configuration or argument.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A mitigation method could not produce a result for its inputs. The
/// pipeline records these as `method_failed` cells instead of aborting.
class MethodFailed : public Error {
public:
    using Error::Error;
};

enum class BiasKind {
    label,
    select_random,
    select_self,
    select_malicious,
    select_whole_random,
};

enum class Method {
    unmitigated,
    reweighing,
    massaging,
    ftu,
    eop,
    ceo,
    roc_spd,
    roc_eqop,
    roc_avod,
};

enum class EvalMode { fair, biased };

enum class LearnerKind { forest, tree, logistic };

std::string_view to_string(BiasKind kind);
std::string_view to_string(Method method);
std::string_view to_string(EvalMode mode);
std::string_view to_string(LearnerKind kind);

BiasKind parse_bias_kind(std::string_view text);
Method parse_method(std::string_view text);
EvalMode parse_eval_mode(std::string_view text);
LearnerKind parse_learner(std::string_view text);

inline bool is_selection(BiasKind kind) { return kind != BiasKind::label; }

inline bool is_postprocessing(Method m) {
    return m == Method::eop || m == Method::ceo || m == Method::roc_spd ||
           m == Method::roc_eqop || m == Method::roc_avod;
}

}  // namespace fairbias
