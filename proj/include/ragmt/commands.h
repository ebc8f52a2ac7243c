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

// Subcommand bodies for the ragmt binary. Each returns the process exit
// status:
//
//   0  success
//   1  usage or config error
//   2  missing input
//   3  partial runtime failure

#ifndef RAGMT_COMMANDS_H_
#define RAGMT_COMMANDS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "ragmt/experiment.h"

namespace ragmt::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitMissingInput = 2,
  kExitPartialFailure = 3,
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

inline constexpr std::string_view kErrorMarker = "<<ERROR>>";

int LexiconValidate(const std::filesystem::path& path, Streams io);

// Reads lines from io.in and writes segments joined by '/'. With spans,
// each segment is followed by [start,end).
int SegmentLines(const std::filesystem::path& lexicon_path, bool show_spans,
                 Streams io);

int PromptShow(const std::string& id, Streams io);

struct TranslateOptions {
  std::filesystem::path config_path;
  std::string label;
  std::optional<std::filesystem::path> trace_path;
  std::optional<std::size_t> parallelism;
};

// One hypothesis line per input line. Failed lines print kErrorMarker and
// the command exits 3 after all lines are written.
int Translate(const TranslateOptions& options, Streams io);

int ExperimentRun(const std::filesystem::path& config_path,
                  const ExperimentRunOptions& options, bool quiet, Streams io);

struct ScoreOptions {
  std::filesystem::path corpus_path;
  std::filesystem::path hyp_path;
  EvalConfig eval;
  bool json = false;
};

int Score(const ScoreOptions& options, Streams io);

// Renders the comparison table stored in an experiment manifest.
int Report(const std::filesystem::path& manifest_path, bool json, Streams io);

}  // namespace ragmt::cli

#endif  // RAGMT_COMMANDS_H_
