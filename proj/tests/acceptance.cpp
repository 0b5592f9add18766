// Acceptance gate. Prints one PASS/FAIL line per criterion; exits nonzero if any selected criterion fails.
//   acceptance                 all criteria
//   acceptance --criterion N   only criterion N (repeatable)

#include "dwc/acceptance.hpp"

#include <cstring>
#include <iostream>

int main(int argc, char** argv) {
  using namespace dwc;
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc)
      ids.push_back(std::atoi(argv[++i]));
    else {
      std::cerr << "usage: acceptance [--criterion N]...\n";
      return 2;
    }
  }
  if (ids.empty()) ids = acceptance::all_ids();
  acceptance::Options opts;
  int failed = 0;
  for (int id : ids) {
    acceptance::Result r;
    try {
      r = acceptance::run(id, opts);
    } catch (const std::exception& e) {
      r = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what()};
    }
    std::cout << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << "\n    " << r.detail << '\n';
    if (!r.passed) ++failed;
  }
  return failed ? 1 : 0;
}
