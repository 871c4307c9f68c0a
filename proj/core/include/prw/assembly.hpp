// SPDX-License-Identifier: Apache-2.0
#ifndef PRW_ASSEMBLY_HPP
#define PRW_ASSEMBLY_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "prw/tripos.hpp"

namespace prw::assembly {

using tripos::Ctx;
using tripos::RSet;
using tripos::Trilean;

/// A parameterized assembly: a carrier with a nonempty existence predicate.
/// Finite carriers list their points; the designated infinite carriers
/// (N, Z, Q) represent points as canonical number/fraction text and checks
/// sample a configurable range.
struct Assembly {
  enum class Carrier { Finite, N, Z, Q };
  Carrier carrier = Carrier::Finite;
  std::string name;
  std::vector<std::string> points;  // finite carriers
  std::function<RSet(const std::string&)> exist;
  int sample_lo = 0, sample_hi = 200;

  std::vector<std::string> sample_points() const;
  bool carries(const std::string& x) const;
};

Assembly finite_assembly(std::string name, std::vector<std::string> points,
                         std::map<std::string, RSet> exist);

/// The standard number assemblies: numbers realized by Curry numerals,
/// integers through 2k / 1-2k, rationals through the rational enumeration.
struct StdAssemblies {
  Assembly objN, objZ, objQ;
};
StdAssemblies std_assemblies(kit::KitTable& kit, int sample_lo = 0, int sample_hi = 40);

struct MapCert {
  enum class Verdict { Verified, Counterexample, Inconclusive };
  Verdict verdict;
  std::string realizer;
  std::string x, b, p;
  std::string detail;
};

/// Certifies that `realizer` tracks f: for every sampled x, every b in
/// E_X(x) and every sampled parameter, realizer . b lands in E_Y(f(x)).
MapCert check_map(Ctx& ctx, const Assembly& X, const Assembly& Y,
                  const std::function<std::string(const std::string&)>& f,
                  const std::string& realizer);
MapCert check_map_val(Ctx& ctx, const Assembly& X, const Assembly& Y,
                      const std::function<std::string(const std::string&)>& f,
                      const PpcaModel::Val& realizer, const std::string& label = "<val>");

/// Product assembly: points "x,y", existence through pair/fst/snd.
Assembly product(Ctx& ctx, const Assembly& X, const Assembly& Y);

/// Membership check against the exponential's existence predicate E_{Y^X}(f);
/// coincides with map certification.
MapCert exponential_check(Ctx& ctx, const Assembly& X, const Assembly& Y,
                          const std::function<std::string(const std::string&)>& f,
                          const std::string& realizer);

/// The constant assembly: every realizer witnesses every point.
Assembly nabla(Ctx& ctx, std::string name, std::vector<std::string> labels);

using PointPred = std::function<RSet(const std::string&)>;

struct StableResult {
  enum class Kind { Stable, NotStable, NotStrict };
  Kind kind;
  std::map<std::string, std::string> classifier;  // point -> "0" / "1"
  std::string witness;
  std::string detail;
};

/// Classifies a strict predicate into the two-point set: the indicator of
/// "phi(x) nonempty", together with the double-negation stability realizer
/// (an a turning any E_X(x)-realizer into a phi(x)-realizer wherever phi(x)
/// is nonempty).
StableResult classify_stable(Ctx& ctx, const Assembly& X, const PointPred& phi,
                             std::vector<std::string> candidates = {});

struct SubResult {
  bool ok;
  Assembly sub;
  std::string error;
};

/// Sub-assembly carved out by a strict predicate: carrier = points with
/// nonempty phi, existence = phi. Rejects non-strict predicates.
SubResult sub_assembly(Ctx& ctx, const Assembly& X, const PointPred& phi,
                       std::string name);

/// Topos-level connectives over strict predicates on an assembly.
PointPred topos_top(const Assembly& X);
PointPred topos_imp(Ctx& ctx, const Assembly& X, const PointPred& phi,
                    const PointPred& psi);
PointPred topos_forall(Ctx& ctx, const Assembly& X, const Assembly& Y,
                       const std::function<RSet(const std::string&, const std::string&)>& phi);

/// Decidable order and arithmetic realizers for objZ / objQ in the oracle
/// model: selectors answer with the kit booleans, the or-realizer witnesses
/// x < y or y <= x in the disjunction format. They embed the numeral
/// converters, so they travel as model values.
struct NumberRealizers {
  PpcaModel::Val q_add;
  PpcaModel::Val q_lt_selector;
  PpcaModel::Val q_order_or;
  PpcaModel::Val z_add;
  PpcaModel::Val z_lt_selector;
  PpcaModel::Val z_order_or;
};
NumberRealizers number_realizers(kit::KitTable& kit);

}  // namespace prw::assembly

#endif
