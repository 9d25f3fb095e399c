#pragma once

// Reference values frozen from an independent mpmath computation at 60
// significant digits (eta_i = exp(eta_{i-1} - 1) iterated from eta_0 = 0),
// or copied from the published tables.

#include <array>
#include <string>

#include "wordfn/numeric.hpp"

namespace frozen {

inline const std::array<const char*, 13> kEta = {
    "0",
    "0.367879441171442321595523770161460867445811131",
    "0.531463605386615672816914837100104183581403802",
    "0.62591769471732240401117230131095806298220811",
    "0.687920290024944435629095388875650419037343965",
    "0.731923184324282874377549881067688166791436141",
    "0.764849026451465326360729007654935072729211356",
    "0.790451503351491206141301569253961941782638272",
    "0.810950310107282315665802813436278074361264705",
    "0.827745375093943707754265037587137592038552786",
    "0.841764811592686728512992978063058040156803676",
    "0.853648990011071659926633784599311150610430277",
    "0.863854428428163854509478017515641722358894328",
};

// exp(eta_1 eta_2 - 1)
inline const char* kG1Eta1Eta2 = "0.447318027759167451028401848520217801732870415";
// eta_2 eta_1 (eta_1 + 1): second moment of Z_1 on {Z_2 = 0}
inline const char* kSecond_k2_i1_j1 = "0.267440311717537107755864230088858545614702652";
// eta_3 eta_2 (eta_2 eta_1 + eta_1): E[Z_1 Z_2 ; Z_3 = 0]
inline const char* kSecond_k3_i1_j2 = "0.187414400128100979969375966994913651508994914";
// The printed closed form for c(aaabaa), evaluated with exp().
inline const char* kCAaabaaClosedForm = "0.110202720272059160489250857496877508517541562";

struct TableRow {
    const char* word;
    double value;       // printed to 6 decimals
    const char* exact;  // printed form, exponentials normalized with eta_1 e^s = g_1(s)
};

inline const std::array<TableRow, 7> kTableC = {{
    {"a", 0.097209, "-2*eta_1^2 + eta_1"},
    {"aa", 0.149768, "-2*eta_2^2*eta_1 + 2*eta_2*eta_1 - 2*eta_2^2 + eta_2"},
    {"ab", 0.097922, "-2*eta_1^2*eta_2^2 + 2*eta_2^2*eta_1 - 2*eta_2^2 + eta_2"},
    {"aaa", 0.182808,
     "-2*eta_1*eta_2*eta_3^2 + 2*eta_1*eta_2*eta_3 - 2*eta_2*eta_3^2 + 2*eta_2*eta_3 - 2*eta_3^2 + eta_3"},
    {"aab", 0.109260,
     "-2*eta_2^2*eta_1*eta_3^2 + 2*eta_1*eta_2*eta_3^2 - 2*eta_2^2*eta_3^2 + 2*eta_2*eta_3^2 - 2*eta_3^2 + eta_3"},
    {"aba", 0.108728,
     "-2*eta_1^2*eta_2^2*eta_3^2 + 4*eta_2^2*eta_1*eta_3^2 - 4*eta_1*eta_2*eta_3^2 - 2*eta_2^2*eta_3^2"
     " + 2*eta_1*eta_2*eta_3 + 2*eta_2*eta_3^2 - 2*eta_3^2 + eta_3"},
    {"abb", 0.109157,
     "-2*eta_1^2*eta_2^2*eta_3^2 + 2*eta_1*eta_2*eta_3^2 - 2*eta_2*eta_3^2 + eta_3 - 2*eta_3^2"
     " + 2*eta_3*g_1(eta_2*eta_1)"},
}};

inline const std::array<TableRow, 7> kTableCTilde = {{
    {"a", -0.038126, "-3*eta_1^2 + eta_1"},
    {"aa", -0.236595, "-3*eta_2^2*eta_1 + 2*eta_2*eta_1 - 3*eta_2^2 + eta_2"},
    {"ab", -0.157074, "-4*eta_1^2*eta_2^2 + 3*eta_2^2*eta_1 - 3*eta_2^2 + eta_2"},
    {"aaa", -0.493775,
     "-3*eta_1*eta_2*eta_3^2 + 2*eta_1*eta_2*eta_3 - 3*eta_2*eta_3^2 + 2*eta_2*eta_3 - 3*eta_3^2 + eta_3"},
    {"aab", -0.300435,
     "-4*eta_2^2*eta_1*eta_3^2 + 3*eta_1*eta_2*eta_3^2 - 4*eta_2^2*eta_3^2 + 3*eta_2*eta_3^2 - 3*eta_3^2 + eta_3"},
    {"aba", -0.296218,
     "-4*eta_1^2*eta_2^2*eta_3^2 - 2*eta_1^2*eta_2*eta_3^2 + 8*eta_2^2*eta_1*eta_3^2 - 5*eta_1*eta_2*eta_3^2"
     " - 4*eta_2^2*eta_3^2 + 2*eta_1*eta_2*eta_3 + 3*eta_2*eta_3^2 - 3*eta_3^2 + eta_3"},
    {"abb", -0.294540,
     "eta_3 + 2*eta_3*eta_1*g_1(eta_2*eta_1) + 3*eta_1*eta_2*eta_3^2 - 3*eta_3^2 - 3*eta_2*eta_3^2"
     " - 2*eta_1^2*eta_2*eta_3^2 - 4*eta_1^2*eta_2^2*eta_3^2 + 2*eta_3*g_1(eta_2*eta_1)"},
}};

// eta_6 coefficient of c(aaabaa), as printed.
inline const char* kAaabaaEta6Coefficient =
    "1 + 2*g_1(eta_4*eta_5) + 2*eta_5*eta_4*g_2(eta_1*eta_4) + 2*eta_5*eta_4*eta_3*eta_2"
    " + 2*eta_5*eta_4*eta_3*eta_2*eta_1";

inline wordfn::HighFloat eta(int i) { return wordfn::HighFloat(kEta[static_cast<std::size_t>(i)]); }
inline wordfn::HighFloat value(const char* s) { return wordfn::HighFloat(s); }

} // namespace frozen
