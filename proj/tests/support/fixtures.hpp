#pragma once

#include "probmetric/probmetric.hpp"

#include <string>

namespace fixtures {

inline const char* const fig1_text = R"(alphabet a b c
s  -a-> { s1: 1 }
s1 -b-> { nil: 1 }
t  -a-> { t1: 3/4, t2: 1/4 }
t  -a-> { t3: 1 }
t1 -b-> { nil: 1 }
t2 -b-> { nil: 1 }
t3 -b-> { nil: 1 }
)";

inline const char* const fig2_text = R"(alphabet a b c
s  -a-> { s1: 1 }
s1 -b-> { nil: 1 }
s' -a-> { s2: 3/4, s3: 1/4 }
s' -a-> { s4: 1/2, s5: 1/2 }
s2 -b-> { nil: 1 }
s2 -c-> { nil: 1 }
s3 -b-> { nil: 1 }
s4 -b-> { nil: 1 }
s5 -c-> { nil: 1 }
)";

inline probmetric::Pts fig1() { return probmetric::parse_pts(fig1_text); }
inline probmetric::Pts fig2() { return probmetric::parse_pts(fig2_text); }

inline probmetric::StateFormula formula(const std::string& text) { return probmetric::parse_formula(text); }

// Formula shorthands: nil_f is the mimicking
// formula of a dead process over {a, b, c}.
inline const std::string nil_f = "(~<a>T & ~<b>T & ~<c>T)";
inline const std::string b_then_nil = "<b>" + nil_f;
inline const std::string c_then_nil = "<c>" + nil_f;

// phi1 = <a>psi1 & ~b & ~c with psi1 = 1 phi_b,      phi_b  = <b>nil & ~a & ~c
// phi2 = <a>psi2 & ~b & ~c with psi2 = 3/4 phi_bc (+) 1/4 phi_b,  phi_bc = <b>nil & <c>nil & ~a
inline const std::string phi_b = b_then_nil + " & ~<a>T & ~<c>T";
inline const std::string phi_bc = b_then_nil + " & " + c_then_nil + " & ~<a>T";
inline const std::string phi_c = c_then_nil + " & ~<a>T & ~<b>T";
inline const std::string psi1 = "(1 " + phi_b + ")";
inline const std::string psi2 = "(3/4 " + phi_bc + " (+) 1/4 " + phi_b + ")";
inline const std::string psi3 = "(1/2 " + phi_b + " (+) 1/2 " + phi_c + ")";
inline const std::string phi1 = "<a>" + psi1 + " & ~<b>T & ~<c>T";
inline const std::string phi2 = "<a>" + psi2 + " & ~<b>T & ~<c>T";

}  // namespace fixtures
