#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dcopkit/model.hpp"

namespace dcopkit {

// Framework names follow X6 X5 X4 "Dis" X3 X2 X1 "COP".
//
//   FullCamel     UtilitarianQuantifiedOpenDisDomainsStaticWeightedCOP
//   ShortLetters  UQODisDSWCOP
//   DefaultElided QODisCOP
//
// DefaultElided strips default values outermost-first on each side of "Dis"
// and stops at the first non-default. A Boolean X1 folds into the suffix as
// "CSP" and then no longer blocks elision of X2 and X3.
enum class NameForm { FullCamel, ShortLetters, DefaultElided };

std::string encode(const FrameworkDescriptor& d, NameForm form);

// Accepts full words and single letters (with underscore compounds such as
// D_C or Domains_Costs), any subset of elided positions, and "CSP" for a
// Boolean COP. When several position assignments fit, the one matching the
// canonical elision wins; otherwise NameAmbiguityError lists the candidates.
FrameworkDescriptor decode(std::string_view name);

// Human-readable value names, in X6..X1 order for descriptors.
std::string_view name(Structure s);
std::string_view name(Decision d);
std::string_view name(PrivacyManagement m);
std::string name(const DistributionReason& r);
std::string describe(const FrameworkDescriptor& d);

// Parses six full-word fields "X6,X5,X4,X3,X2,X1".
FrameworkDescriptor parse_fields(std::string_view text);

// Every descriptor: 3 * 4 * 2 * 7 * 3 * 4 = 2016 values.
std::vector<FrameworkDescriptor> all_descriptors();

}  // namespace dcopkit
