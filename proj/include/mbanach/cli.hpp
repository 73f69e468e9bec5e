#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "mbanach/linalg.hpp"
#include "mbanach/scaledfree.hpp"
#include "mbanach/weights.hpp"

namespace mbanach {

// Alphabet descriptors:
//   min:1,-1            scalar points inheriting MIN(C)
//   amax:1,2i           scalar points inheriting AMAX(C)
//   ma:a=2,b=3          MA over a weighted set (numeric labels double as payloads)
//   mina:s=1            mA over a weighted set
//   minl1:p=1|0,q=0|1   vector points inheriting MIN(l1(d)); minlinf likewise
//   amaxl1:2|3:p=1|0    vector points inheriting AMAX(l1(w)) with w = (2, 3)
//   zx:<descriptor>     Theta appended; scaled:<t>:<descriptor>; zero:<label>
// or a preset name (see alphabet_presets()).
std::shared_ptr<const AWSet> parse_alphabet(const std::string& descriptor, const EnumCaps& caps = {});
std::vector<std::pair<std::string, std::string>> alphabet_presets();

// `label:coeff` pairs, e.g. `1:1,-1:1`; unnamed points get coefficient 0.
FreeVector parse_free_vector(const AWSet& x, const std::string& text);

// Caps literal `R,C,P`.
EnumCaps parse_caps(const std::string& text, EnumCaps base = {});

struct VerifyItem {
  std::string name;
  std::string expected;
  std::string computed;
  bool pass = false;
  std::string detail;
};

// Seams for planting faults in the golden suite.
struct VerifyHooks {
  std::function<double(const ScalarMatrix&)> operator_norm = mbanach::operator_norm;
  std::function<double(const ScalarMatrix&)> trace_norm = mbanach::trace_norm;
};

std::vector<VerifyItem> paper_verify(const VerifyHooks& hooks = {});

// Runs one subcommand; `args` excludes the program name.  Returns 0 on
// success, 1 when a check or verification fails, 2 on bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

constexpr const char* kVersion = "0.1.0";

}  // namespace mbanach
