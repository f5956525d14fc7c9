// Replays a golden transcript against the CLI binary.
// Usage: run_transcript <cli> <transcript> <data-dir>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct Case {
  std::string args;
  std::string output;
  int exit_code = 0;
};

std::vector<Case> load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<Case> cases;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("$ ", 0) == 0) {
      cases.push_back({line.substr(2), "", 0});
    } else if (line.rfind("? ", 0) == 0) {
      cases.back().exit_code = std::stoi(line.substr(2));
    } else if (!cases.empty()) {
      cases.back().output += line + "\n";
    }
  }
  return cases;
}

std::pair<std::string, int> run(const std::string& command) {
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: run_transcript <cli> <transcript> <data-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string dir = argv[3];
  int failed = 0;
  const std::vector<Case> cases = load(argv[2]);
  for (const Case& c : cases) {
    const auto [out, code] = run("cd '" + dir + "' && '" + cli + "' " + c.args + " 2>&1");
    if (out == c.output && code == c.exit_code) continue;
    ++failed;
    std::cout << "FAIL: " << c.args << "\n--- expected (exit " << c.exit_code << ")\n"
              << c.output << "--- got (exit " << code << ")\n" << out;
  }
  std::cout << cases.size() - failed << "/" << cases.size() << " transcript cases match\n";
  return failed == 0 ? 0 : 1;
}
