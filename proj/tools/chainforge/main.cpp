// Builds the sifting chains for an enumerable group file, certifies each
// one with the chain verifier, and saves only fully certified chains.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "forge.hpp"
#include "gsift/chain.hpp"
#include "gsift/chain_verify.hpp"
#include "gsift/group_io.hpp"
#include "gsift/oracle.hpp"

namespace {

struct Recipe {
  const char* chain;
  const char* group_label;
  gsift::ChainSpec (*build)(const gsift::EnumeratedGroup&);
};

const Recipe kRecipes[] = {
    {"m11-involution", "m11", chainforge::forge_m11_involution},
    {"m11-eleven", "m11", chainforge::forge_m11_eleven},
    {"m12-involution", "m12", chainforge::forge_m12_involution},
    {"m22-involution", "m22", chainforge::forge_m22_involution},
    {"j2-eight", "j2", chainforge::forge_j2_eight},
    {"j2-involution", "j2", chainforge::forge_j2_involution},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"build and certify sifting chains for an enumerable group"};
  std::string group_path;
  std::string out_dir = "data/chains";
  std::vector<std::string> only;
  app.add_option("--group", group_path, "group file to build chains for")->required();
  app.add_option("--out", out_dir, "output directory for chain files");
  app.add_option("--only", only, "restrict to the named chains");
  CLI11_PARSE(app, argc, argv);

  try {
    gsift::Group group = gsift::load_group(group_path);

    std::vector<const Recipe*> todo;
    for (const Recipe& r : kRecipes) {
      if (group.label != r.group_label) continue;
      if (!only.empty() && std::find(only.begin(), only.end(), r.chain) == only.end()) continue;
      todo.push_back(&r);
    }
    if (todo.empty()) {
      std::cerr << "no recipe matches group label '" << group.label << "'\n";
      return 2;
    }

    std::vector<gsift::ChainSpec> specs;
    {
      gsift::EnumeratedGroup G = gsift::EnumeratedGroup::enumerate(group.generators);
      std::cout << "enumerated " << group.label << ": " << G.order() << " elements\n";
      for (const Recipe* r : todo) {
        specs.push_back(r->build(G));
        std::cout << "built " << r->chain << ": " << specs.back().steps.size() << " steps, "
                  << specs.back().defs.size() << " defs\n"
                  << std::flush;
      }
    }  // free the construction tables; verification re-enumerates on its own

    bool all_ok = true;
    for (const gsift::ChainSpec& spec : specs) {
      gsift::VerifyReport report = gsift::validate_chain(spec, group, {});
      size_t passes = 0, claims = 0;
      bool uncertified = false;
      for (const std::string& line : report.lines) {
        if (line.rfind("CLAIM ", 0) == 0) ++claims;
        if (line.size() >= 5 && line.compare(line.size() - 5, 5, " PASS") == 0) ++passes;
        if (line.find(" UNCERTIFIED") != std::string::npos) uncertified = true;
      }
      bool ok = !report.any_fail && !uncertified;
      std::cout << "verify " << spec.name << ": " << (ok ? "PASS" : "FAIL") << " (" << passes
                << "/" << claims << " claims)\n";
      if (!ok) {
        std::cout << report.text();
        all_ok = false;
        continue;
      }
      std::filesystem::create_directories(out_dir);
      std::string path = out_dir + "/" + spec.name + ".chain";
      gsift::save_chain_spec(spec, path);
      std::cout << "wrote " << path << "\n";
    }
    return all_ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
