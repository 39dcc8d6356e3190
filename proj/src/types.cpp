#include "fairbias/types.hpp"

#include <array>
#include <utility>

namespace fairbias {

namespace {

template <typename E, std::size_t N>
E parse_enum(std::string_view text, const std::array<std::pair<E, std::string_view>, N>& table,
             const char* what) {
    for (const auto& [value, name] : table)
        if (name == text) return value;
    throw ConfigError(std::string("unknown ") + what + " '" + std::string(text) + "'");
}

template <typename E, std::size_t N>
std::string_view name_of(E value, const std::array<std::pair<E, std::string_view>, N>& table) {
    for (const auto& [v, name] : table)
        if (v == value) return name;
    return "?";
}

constexpr std::array<std::pair<BiasKind, std::string_view>, 5> kBiasKinds{{
    {BiasKind::label, "label"},
    {BiasKind::select_random, "select_random"},
    {BiasKind::select_self, "select_self"},
    {BiasKind::select_malicious, "select_malicious"},
    {BiasKind::select_whole_random, "select_whole_random"},
}};

constexpr std::array<std::pair<Method, std::string_view>, 9> kMethods{{
    {Method::unmitigated, "unmitigated"},
    {Method::reweighing, "reweighing"},
    {Method::massaging, "massaging"},
    {Method::ftu, "ftu"},
    {Method::eop, "eop"},
    {Method::ceo, "ceo"},
    {Method::roc_spd, "roc_spd"},
    {Method::roc_eqop, "roc_eqop"},
    {Method::roc_avod, "roc_avod"},
}};

constexpr std::array<std::pair<EvalMode, std::string_view>, 2> kModes{{
    {EvalMode::fair, "fair"},
    {EvalMode::biased, "biased"},
}};

constexpr std::array<std::pair<LearnerKind, std::string_view>, 3> kLearners{{
    {LearnerKind::forest, "forest"},
    {LearnerKind::tree, "tree"},
    {LearnerKind::logistic, "logistic"},
}};

}  // namespace

std::string_view to_string(BiasKind kind) { return name_of(kind, kBiasKinds); }
std::string_view to_string(Method method) { return name_of(method, kMethods); }
std::string_view to_string(EvalMode mode) { return name_of(mode, kModes); }
std::string_view to_string(LearnerKind kind) { return name_of(kind, kLearners); }

BiasKind parse_bias_kind(std::string_view text) { return parse_enum(text, kBiasKinds, "bias kind"); }
Method parse_method(std::string_view text) { return parse_enum(text, kMethods, "method"); }
EvalMode parse_eval_mode(std::string_view text) { return parse_enum(text, kModes, "eval mode"); }
LearnerKind parse_learner(std::string_view text) { return parse_enum(text, kLearners, "learner"); }

}  // namespace fairbias
