#include <doctest.h>

#include "dcopkit/errors.hpp"
#include "dcopkit/nomenclature.hpp"

using namespace dcopkit;

namespace {

FrameworkDescriptor make(Objective x6, PrivacyManagement x5, Decision x4, DistributionReason x3,
                         Structure x2, ValueSystem x1) {
  FrameworkDescriptor d;
  d.x6 = x6;
  d.x5 = x5;
  d.x4 = x4;
  d.x3 = x3;
  d.x2 = x2;
  d.x1 = x1;
  return d;
}

constexpr DistributionReason kDomains{true, false, false};
constexpr DistributionReason kCosts{false, false, true};
constexpr DistributionReason kDomainsCosts{true, false, true};

const auto U = Objective::Utilitarian;
const auto S = Structure::Static;
const auto O = Decision::Open;

}  // namespace

TEST_CASE("printed framework names") {
  const auto discop = make(U, PrivacyManagement::Public, O, kDomains, S, ValueSystem::Weighted);
  CHECK(encode(discop, NameForm::DefaultElided) == "DisCOP");
  CHECK(decode("DisCOP") == discop);

  const auto quantified = make(U, PrivacyManagement::Quantified, O, kDomains, S, ValueSystem::Weighted);
  CHECK(encode(quantified, NameForm::ShortLetters) == "UQODisDSWCOP");
  CHECK(encode(quantified, NameForm::DefaultElided) == "QODisCOP");
  CHECK(decode("UQODisDSWCOP") == quantified);
  CHECK(decode("QODisCOP") == quantified);

  const auto steg = make(U, PrivacyManagement::Steganographic, O, kDomains, S, ValueSystem::Weighted);
  CHECK(encode(steg, NameForm::DefaultElided) == "SODisCOP");
  CHECK(decode("SODisCOP") == steg);

  const auto steg_costs = make(U, PrivacyManagement::Steganographic, O, kCosts, S, ValueSystem::Weighted);
  CHECK(encode(steg_costs, NameForm::DefaultElided) == "SODisCCOP");
  CHECK(decode("SODisCCOP") == steg_costs);

  const auto crypto = make(U, PrivacyManagement::Cryptographic, Decision::Closed, kCosts, S,
                           ValueSystem::Weighted);
  CHECK(encode(crypto, NameForm::ShortLetters) == "UCCDisCSWCOP");
  CHECK(encode(crypto, NameForm::DefaultElided) == "CCDisCCOP");
  CHECK(decode("UCCDisCSWCOP") == crypto);
  CHECK(decode("CCDisCCOP") == crypto);

  const auto discsp = make(U, PrivacyManagement::Public, O, kDomains, S, ValueSystem::Boolean);
  CHECK(encode(discsp, NameForm::DefaultElided) == "DisCSP");
  CHECK(decode("DisCSP") == discsp);

  const auto dc = make(U, PrivacyManagement::Public, O, kDomainsCosts, S, ValueSystem::Boolean);
  CHECK(encode(dc, NameForm::DefaultElided) == "DisD_CCSP");
  CHECK(decode("DisD_CCSP") == dc);
}

TEST_CASE("short forms keep the Boolean letter") {
  CHECK(decode("UPODisDSBCOP") == decode("DisCSP"));
  CHECK(decode("UPODisD_CSBCOP") == decode("DisD_CCSP"));
  CHECK(encode(decode("DisCSP"), NameForm::ShortLetters) == "UPODisDSBCOP");
  CHECK(encode(decode("DisCOP"), NameForm::FullCamel) ==
        "UtilitarianPublicOpenDisDomainsStaticWeightedCOP");
}

TEST_CASE("full words and mixed forms decode") {
  CHECK(decode("SteganographicOpenDisCostsCOP") == decode("SODisCCOP"));
  CHECK(decode("LeximinDisCOP").x6 == Objective::Leximin);
  CHECK(decode("DisD_LCOP").x2 == Structure::DynamicLocal);
  CHECK(decode("DisDomains_Variables_CostsCOP").x3 == DistributionReason{true, true, true});
}

TEST_CASE("malformed names carry a position") {
  try {
    decode("XDisCOP");
    FAIL("expected a parse error");
  } catch (const NameParseError& e) {
    CHECK(e.position() == 1);
  }
  CHECK_THROWS_AS(decode("SODisCO"), NameParseError);
  CHECK_THROWS_AS(decode("SOCOP"), NameParseError);
  CHECK_THROWS_AS(decode(""), NameParseError);
  CHECK_THROWS_AS(decode("TCDisCOP"), NameAmbiguityError);
}

TEST_CASE("every descriptor round-trips through every style") {
  const auto all = all_descriptors();
  CHECK(all.size() == 3 * 4 * 2 * 7 * 3 * 4);
  for (const auto& d : all) {
    for (NameForm form : {NameForm::FullCamel, NameForm::ShortLetters, NameForm::DefaultElided}) {
      const std::string text = encode(d, form);
      CAPTURE(text);
      CHECK(decode(text) == d);
    }
    CHECK(encode(d, NameForm::DefaultElided).size() <= encode(d, NameForm::ShortLetters).size());
  }
}

TEST_CASE("field lists and descriptions") {
  const auto d = parse_fields("Utilitarian,Cryptographic,Closed,Costs,Static,Weighted");
  CHECK(encode(d, NameForm::DefaultElided) == "CCDisCCOP");
  CHECK(describe(decode("DisCSP")) ==
        "x6=Utilitarian x5=Public x4=Open x3=Domains x2=Static x1=Boolean");
  CHECK_THROWS_AS(parse_fields("Utilitarian,Public"), NameParseError);
}
