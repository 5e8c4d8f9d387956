#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bagcq/lab/generate.hpp"

namespace bagcq {

struct LemmaReport {
  std::string id;
  std::size_t run = 0;
  std::size_t passed = 0;
  /// Inputs of the first failing case; present iff passed < run.
  std::optional<std::string> counterexample;
  std::chrono::duration<double> elapsed{};
};

/// Replaceable pieces of the library, so that the harness itself can be
/// tested against deliberately broken implementations.
struct LemmaHooks {
  std::function<CQ(const UCQ&)> cqize;
};

/// Identifiers accepted by check_lemma, in registry order.
const std::vector<std::string>& lemma_ids();

/// Runs one registered property over inputs drawn according to `cfg`.
///
/// Query-level lemmas use cfg.signature's base part, or {A/1, E/2} with a
/// constant a when it has no relations. Conditional lemmas count only cases
/// meeting their premise, trying up to 20 inputs per requested sample.
/// Throws PreconditionError for an unknown id.
LemmaReport check_lemma(const std::string& id, const GenConfig& cfg, const LemmaHooks& hooks = {});

std::string to_string(const LemmaReport& r);

}  // namespace bagcq
