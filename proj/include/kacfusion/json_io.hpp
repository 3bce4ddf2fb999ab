#pragma once

// JSON and CSV serialisation of the library's results, and parsing of the
// small textual inputs accepted on the command line.

#include <string>
#include <string_view>

#include <json.hpp>

#include "kacfusion/checks.hpp"
#include "kacfusion/walg.hpp"

namespace kacfusion {

using Json = nlohmann::ordered_json;

/// Rationals are written as strings "n" or "n/d".
Json to_json(const Rational& r);
Json to_json(const FiniteWeight& w);
Json to_json(const WeylElement& w);  // rows of the matrix on weight coordinates
Json to_json(Complex z);             // [re, im]

Json root_system_json(const FiniteRootSystem& rs);
Json level_json(const LevelData& ld);
Json label_json(const AdmissibleLabel& label);
Json wlabel_json(const WLabel& label);

/// {labels, re, im, kind, p, q, type, norm_const}
Json smatrix_json(const SMatrix& s);
/// One row per entry: i,j,abs,arg where arg is arg(S)/2pi in (-1/2, 1/2].
std::string smatrix_csv(const SMatrix& s);

Json tmatrix_json(const TMatrix& t, const std::vector<std::string>& labels);
Json sl2_json(const SL2Report& r, double tolerance);

/// {labels, N, max_rounding_error} with N[a][b][c] = N_{a,b}^c.
Json fusion_json(const FusionTensor& t);
/// One row per nonzero coefficient: a,b,c,N.
std::string fusion_csv(const FusionTensor& t);

Json factorization_json(const FactorizationReport& r);

/// {value, tail_bound, N}
Json series_json(const SeriesEval& e);
Json transform_json(const TransformCheck& c, double tolerance);
Json psi_check_json(const PsiCheck& c, double tolerance, double degenerate_tolerance);

/// Parses "i", "-2.5i", "0.3+0.1i", "1e-3-2i", "0.7".
Complex parse_complex(std::string_view text);
/// Comma separated complex numbers.
CVec parse_cvec(std::string_view text);

}  // namespace kacfusion
