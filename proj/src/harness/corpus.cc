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

#include "semcomm/harness/corpus.h"

#include <algorithm>
#include <cctype>

#include "semcomm/error.h"

namespace semcomm::harness {
namespace {

bool is_image(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".bmp";
}

}  // namespace

std::vector<CorpusEntry> list_corpus(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw ConfigError("corpus directory not found: " + root.string());
  std::vector<CorpusEntry> out;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_regular_file() && is_image(entry.path())) {
      out.push_back({entry.path(), ""});
    } else if (entry.is_directory()) {
      const std::string label = entry.path().filename().string();
      for (const auto& file : fs::directory_iterator(entry.path())) {
        if (file.is_regular_file() && is_image(file.path())) out.push_back({file.path(), label});
      }
    }
  }
  if (out.empty()) throw ConfigError("corpus has no PNG/BMP images: " + root.string());
  std::sort(out.begin(), out.end(), [](const CorpusEntry& a, const CorpusEntry& b) {
    if (a.label != b.label) return a.label < b.label;
    return a.path.filename() < b.path.filename();
  });
  return out;
}

std::string entry_tag(const CorpusEntry& entry) {
  std::string name = entry.path.filename().string();
  std::replace(name.begin(), name.end(), '.', '_');
  return name;
}

}  // namespace semcomm::harness
