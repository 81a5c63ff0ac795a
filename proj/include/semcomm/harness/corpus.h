// Copyright 2026 The semcomm Authors.
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

#ifndef SEMCOMM_HARNESS_CORPUS_H_
#define SEMCOMM_HARNESS_CORPUS_H_

#include <filesystem>
#include <string>
#include <vector>

namespace semcomm::harness {

struct CorpusEntry {
  std::filesystem::path path;
  std::string label;  // name of the class directory
};

// Lists *.png / *.bmp files one level below `root`, one directory per class,
// sorted by (label, file name). Images directly in `root` get an empty label.
// Throws ConfigError if the directory is missing or holds no images.
std::vector<CorpusEntry> list_corpus(const std::filesystem::path& root);

// File name with the extension dot replaced, e.g. "rose_0001_png"; unique
// within a class directory and safe to use as an output stem.
std::string entry_tag(const CorpusEntry& entry);

}  // namespace semcomm::harness

#endif  // SEMCOMM_HARNESS_CORPUS_H_
