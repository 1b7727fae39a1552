// Copyright 2026 The passgi Authors.
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

// Stand-in for an optimizer driver, for environments without one:
//
//   fake_opt --catalog <file> [-<pass>...] <input> -o <output>
//
// Rejects pass flags missing from the catalog the way a real optimizer
// rejects unknown options, then copies input to output unchanged.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string catalog_path;
  std::string input;
  std::string output;
  std::vector<std::string> passes;

  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--catalog" && i + 1 < args.size()) {
      catalog_path = args[++i];
    } else if (args[i] == "-o" && i + 1 < args.size()) {
      output = args[++i];
    } else if (args[i].size() > 1 && args[i][0] == '-') {
      passes.push_back(args[i].substr(1));
    } else {
      input = args[i];
    }
  }
  if (catalog_path.empty() || input.empty() || output.empty()) {
    std::cerr << "usage: fake_opt --catalog <file> [-<pass>...] <input> -o <output>\n";
    return 2;
  }

  std::set<std::string> known;
  std::ifstream cat(catalog_path);
  for (std::string line; std::getline(cat, line);) {
    if (!line.empty() && line[0] != '#') known.insert(line);
  }
  for (const auto& p : passes) {
    if (!known.count(p)) {
      std::cerr << "fake_opt: Unknown command line argument '-" << p << "'\n";
      return 1;
    }
  }

  std::error_code ec;
  std::filesystem::copy_file(input, output, std::filesystem::copy_options::overwrite_existing, ec);
  if (ec) {
    std::cerr << "fake_opt: " << ec.message() << "\n";
    return 1;
  }
  return 0;
}
