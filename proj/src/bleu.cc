// Copyright 2026 The ragmt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ragmt/bleu.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "ragmt/utf8.h"

namespace ragmt {
namespace {

using Ngram = std::vector<std::uint32_t>;

class Vocabulary {
 public:
  std::vector<std::uint32_t> Ids(const Tokens& tokens) {
    std::vector<std::uint32_t> ids;
    ids.reserve(tokens.size());
    for (const std::string& t : tokens) {
      auto [it, inserted] =
          ids_.try_emplace(t, static_cast<std::uint32_t>(ids_.size()));
      ids.push_back(it->second);
    }
    return ids;
  }

 private:
  std::unordered_map<std::string, std::uint32_t> ids_;
};

std::map<Ngram, std::uint64_t> CountNgrams(const std::vector<std::uint32_t>& ids,
                                           int n) {
  std::map<Ngram, std::uint64_t> counts;
  const auto order = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i + order <= ids.size(); ++i) {
    ++counts[Ngram(ids.begin() + i, ids.begin() + i + order)];
  }
  return counts;
}

void Accumulate(const std::vector<std::uint32_t>& candidate,
                const std::vector<std::uint32_t>& reference, int n,
                NgramCounts& counts) {
  const auto cand = CountNgrams(candidate, n);
  const auto ref = CountNgrams(reference, n);
  for (const auto& [gram, count] : cand) {
    counts.total += count;
    auto it = ref.find(gram);
    if (it != ref.end()) counts.clipped += std::min(count, it->second);
  }
}

void CheckAligned(std::size_t candidates, std::size_t references) {
  if (candidates != references) {
    throw std::invalid_argument(
        "candidate and reference lists are misaligned (" +
        std::to_string(candidates) + " vs " + std::to_string(references) +
        ")");
  }
}

BleuScore Combine(std::vector<NgramCounts> counts, std::uint64_t cand_len,
                  std::uint64_t ref_len, bool smooth) {
  BleuScore score;
  score.counts = std::move(counts);
  score.candidate_length = cand_len;
  score.reference_length = ref_len;
  score.brevity_penalty = BrevityPenalty(cand_len, ref_len);

  const double weight = 1.0 / static_cast<double>(score.counts.size());
  double log_sum = 0.0;
  bool zero = false;
  for (std::size_t i = 0; i < score.counts.size(); ++i) {
    const NgramCounts& c = score.counts[i];
    double p;
    if (c.clipped > 0) {
      p = static_cast<double>(c.clipped) / static_cast<double>(c.total);
    } else if (smooth && i > 0) {
      p = 1.0 / static_cast<double>(std::max<std::uint64_t>(c.total, 1));
    } else {
      p = 0.0;
    }
    score.precisions.push_back(p);
    if (p == 0.0) {
      zero = true;
    } else {
      log_sum += weight * std::log(p);
    }
  }
  score.bleu = zero ? 0.0 : score.brevity_penalty * std::exp(log_sum);
  return score;
}

BleuScore Score(std::span<const Tokens> candidates,
                std::span<const Tokens> references, const EvalConfig& config,
                bool smooth) {
  config.Validate();
  CheckAligned(candidates.size(), references.size());
  Vocabulary vocab;
  std::vector<std::vector<std::uint32_t>> cand_ids;
  std::vector<std::vector<std::uint32_t>> ref_ids;
  std::uint64_t cand_len = 0;
  std::uint64_t ref_len = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    cand_ids.push_back(vocab.Ids(candidates[i]));
    ref_ids.push_back(vocab.Ids(references[i]));
    cand_len += candidates[i].size();
    ref_len += references[i].size();
  }

  std::vector<NgramCounts> counts(static_cast<std::size_t>(config.max_order));
  for (std::size_t s = 0; s < cand_ids.size(); ++s) {
    for (int n = 1; n <= config.max_order; ++n) {
      Accumulate(cand_ids[s], ref_ids[s], n,
                 counts[static_cast<std::size_t>(n - 1)]);
    }
  }
  return Combine(std::move(counts), cand_len, ref_len, smooth);
}

}  // namespace

Tokenization ParseTokenization(std::string_view name) {
  if (name == "character") return Tokenization::kCharacter;
  if (name == "whitespace") return Tokenization::kWhitespace;
  throw std::invalid_argument("unknown tokenization '" + std::string(name) +
                              "'");
}

std::string_view TokenizationName(Tokenization t) {
  return t == Tokenization::kCharacter ? "character" : "whitespace";
}

void EvalConfig::Validate() const {
  if (max_order < 1 || max_order > 9) {
    throw std::invalid_argument("max_order must be in [1, 9], got " +
                                std::to_string(max_order));
  }
}

Tokens EvalTokenize(std::string_view text, Tokenization mode) {
  const utf8::Text decoded(text);
  Tokens tokens;
  if (mode == Tokenization::kCharacter) {
    for (std::size_t i = 0; i < decoded.size(); ++i) {
      if (!utf8::IsWhitespace(decoded[i])) {
        tokens.emplace_back(decoded.Slice(i, i + 1));
      }
    }
    return tokens;
  }
  std::size_t i = 0;
  while (i < decoded.size()) {
    while (i < decoded.size() && utf8::IsWhitespace(decoded[i])) ++i;
    const std::size_t begin = i;
    while (i < decoded.size() && !utf8::IsWhitespace(decoded[i])) ++i;
    if (i > begin) tokens.emplace_back(decoded.Slice(begin, i));
  }
  return tokens;
}

NgramCounts ModifiedPrecision(std::span<const Tokens> candidates,
                              std::span<const Tokens> references, int n) {
  if (n < 1) throw std::invalid_argument("n-gram order must be >= 1");
  CheckAligned(candidates.size(), references.size());
  NgramCounts total;
  Vocabulary vocab;
  for (std::size_t s = 0; s < candidates.size(); ++s) {
    Accumulate(vocab.Ids(candidates[s]), vocab.Ids(references[s]), n, total);
  }
  return total;
}

double BrevityPenalty(std::uint64_t candidate_length,
                      std::uint64_t reference_length) {
  if (candidate_length >= reference_length) return 1.0;
  if (candidate_length == 0) return 0.0;
  return std::exp(1.0 - static_cast<double>(reference_length) /
                            static_cast<double>(candidate_length));
}

BleuScore CorpusBleu(std::span<const Tokens> candidates,
                     std::span<const Tokens> references,
                     const EvalConfig& config) {
  if (candidates.empty()) throw std::invalid_argument("empty corpus");
  return Score(candidates, references, config, false);
}

BleuScore CorpusBleu(std::span<const SentencePair> pairs,
                     const EvalConfig& config) {
  if (pairs.empty()) throw std::invalid_argument("empty corpus");
  std::vector<Tokens> cands;
  std::vector<Tokens> refs;
  for (const SentencePair& p : pairs) {
    cands.push_back(EvalTokenize(p.hypothesis, config.tokenization));
    refs.push_back(EvalTokenize(p.reference, config.tokenization));
  }
  return Score(cands, refs, config, false);
}

BleuScore SentenceBleu(std::string_view hypothesis, std::string_view reference,
                       const EvalConfig& config) {
  const Tokens cand[] = {EvalTokenize(hypothesis, config.tokenization)};
  const Tokens ref[] = {EvalTokenize(reference, config.tokenization)};
  return Score(cand, ref, config, config.sentence_smoothing);
}

}  // namespace ragmt
