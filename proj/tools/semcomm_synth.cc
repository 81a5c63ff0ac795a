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

// semcomm_synth: writes a procedural directory-per-class flower corpus.

#include <iostream>

#include "CLI11.hpp"
#include "semcomm/harness/synthetic.h"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic flower corpus"};
  std::string out;
  int per_class = 10, width = 320, height = 240;
  uint64_t seed = 0;
  app.add_option("--out,-o", out, "output directory")->required();
  app.add_option("--per_class", per_class)->check(CLI::PositiveNumber);
  app.add_option("--width", width)->check(CLI::Range(1, 65535));
  app.add_option("--height", height)->check(CLI::Range(1, 65535));
  app.add_option("--seed", seed);
  CLI11_PARSE(app, argc, argv);

  try {
    semcomm::harness::write_synthetic_corpus(out, per_class, width, height, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cout << per_class * 5 << " images -> " << out << '\n';
  return 0;
}
