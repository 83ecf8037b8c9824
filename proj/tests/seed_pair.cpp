// Runs two jobs that differ only in their sampling seed and checks that the
// reports differ only inside sampled sections.
#include <algorithm>
#include <cstdio>
#include <iostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

using Json = nlohmann::ordered_json;

namespace {

Json run(const std::string& cli, const std::string& job) {
  const std::string cmd = "\"" + cli + "\" run \"" + job + "\"";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) throw std::runtime_error("cannot run " + cmd);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  if (pclose(p) != 0) throw std::runtime_error(job + ": nonzero exit");
  return Json::parse(out.substr(0, out.rfind("}\n") + 1));
}

bool sampled(const Json& j) {
  if (!j.is_object()) return false;
  if (j.value("sampled", false)) return true;
  auto m = j.find("mode");
  return m != j.end() && m->is_string() && m->get<std::string>().rfind("sampled", 0) == 0;
}

const std::set<std::string> kSeedDependent = {"/header/spec_digest", "/header/seeds/sample", "/result/seed",
                                              "/result/slope"};

void diff(const Json& a, const Json& b, const std::string& path, bool in_sampled, std::vector<std::string>& allowed,
          std::vector<std::string>& forbidden) {
  in_sampled = in_sampled || sampled(a) || sampled(b);
  if (a.type() == b.type() && (a.is_object() || a.is_array()) && a.size() == b.size()) {
    if (a.is_object()) {
      for (auto it = a.begin(); it != a.end(); ++it) {
        const std::string p = path + "/" + it.key();
        if (!b.contains(it.key()))
          forbidden.push_back(p);
        else
          diff(*it, b[it.key()], p, in_sampled, allowed, forbidden);
      }
    } else {
      for (std::size_t i = 0; i < a.size(); ++i) diff(a[i], b[i], path + "/" + std::to_string(i), in_sampled, allowed, forbidden);
    }
    return;
  }
  if (a == b) return;
  (in_sampled || kSeedDependent.count(path) ? allowed : forbidden).push_back(path);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::cerr << "usage: seed_pair <relhyp> <job> <job with another seed>\n";
    return 2;
  }
  try {
    const Json a = run(argv[1], argv[2]);
    const Json b = run(argv[1], argv[3]);
    std::vector<std::string> allowed, forbidden;
    diff(a, b, "", false, allowed, forbidden);
    for (const auto& p : forbidden) std::cout << "unexpected difference at " << p << "\n";
    for (const auto& p : allowed) std::cout << "sampled difference at " << p << "\n";
    const bool seed_changed = std::find(allowed.begin(), allowed.end(), "/header/seeds/sample") != allowed.end();
    if (!seed_changed) std::cout << "sample seed not recorded in header\n";
    return forbidden.empty() && seed_changed ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
