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

// Corpus and sentence BLEU with a single reference per sentence.
//
//   BLEU = BP * exp( sum_{n=1..N} (1/N) * ln p_n )
//
// p_n is the corpus-level clipped n-gram precision. Any p_n = 0 makes the
// corpus score 0; sentence scores optionally smooth zero-match orders n >= 2
// by counting one match.

#ifndef RAGMT_BLEU_H_
#define RAGMT_BLEU_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ragmt {

enum class Tokenization { kCharacter, kWhitespace };

// Throws std::invalid_argument for anything but "character" / "whitespace".
Tokenization ParseTokenization(std::string_view name);
std::string_view TokenizationName(Tokenization t);

struct EvalConfig {
  int max_order = 4;  // 1..9
  Tokenization tokenization = Tokenization::kCharacter;
  bool sentence_smoothing = true;

  void Validate() const;
};

using Tokens = std::vector<std::string>;

// Character mode: one token per scalar, whitespace dropped. Whitespace
// mode: split on runs of Unicode whitespace.
Tokens EvalTokenize(std::string_view text, Tokenization mode);

struct NgramCounts {
  std::uint64_t clipped = 0;
  std::uint64_t total = 0;

  friend bool operator==(const NgramCounts&, const NgramCounts&) = default;
};

// Throws std::invalid_argument if the lists differ in length or n < 1.
NgramCounts ModifiedPrecision(std::span<const Tokens> candidates,
                              std::span<const Tokens> references, int n);

double BrevityPenalty(std::uint64_t candidate_length,
                      std::uint64_t reference_length);

struct BleuScore {
  double bleu = 0.0;
  std::vector<NgramCounts> counts;  // index n-1
  std::vector<double> precisions;   // as used in the geometric mean
  double brevity_penalty = 0.0;
  std::uint64_t candidate_length = 0;
  std::uint64_t reference_length = 0;
};

struct SentencePair {
  std::string hypothesis;
  std::string reference;
};

// Throws std::invalid_argument on an empty corpus.
BleuScore CorpusBleu(std::span<const SentencePair> pairs,
                     const EvalConfig& config = {});
BleuScore CorpusBleu(std::span<const Tokens> candidates,
                     std::span<const Tokens> references,
                     const EvalConfig& config = {});

BleuScore SentenceBleu(std::string_view hypothesis, std::string_view reference,
                       const EvalConfig& config = {});

}  // namespace ragmt

#endif  // RAGMT_BLEU_H_
