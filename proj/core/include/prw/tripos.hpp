// SPDX-License-Identifier: Apache-2.0
#ifndef PRW_TRIPOS_HPP
#define PRW_TRIPOS_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "prw/kit.hpp"
#include "prw/model.hpp"

namespace prw::tripos {

enum class Trilean { Yes, No, Unknown };

Trilean tri_and(Trilean a, Trilean b);
Trilean tri_not(Trilean a);

/// A set of realizers at one point of a predicate. Derived connectives
/// produce sets whose membership is a test against the model; the support
/// holds the enumerable elements used when the set sits on the left of an
/// entailment check.
class RSet {
public:
  static RSet empty();
  static RSet all(std::vector<std::string> support = {});
  static RSet finite(std::vector<std::string> elems);
  static RSet test(std::function<Trilean(const std::string&)> fn,
                   std::vector<std::string> support, Trilean emptiness = Trilean::Unknown);

  Trilean contains(const std::string& e) const;
  Trilean is_empty() const;
  bool accepts_all() const { return kind_ == Kind::All; }
  const std::vector<std::string>& support() const { return support_; }

private:
  enum class Kind { Empty, All, Finite, Test };
  Kind kind_ = Kind::Empty;
  std::vector<std::string> support_;
  std::function<Trilean(const std::string&)> fn_;
  Trilean emptiness_ = Trilean::Yes;
};

/// Finite-universe tripos predicate: a labeled point set with a realizer set
/// at each point.
struct TriposPredicate {
  std::vector<std::string> universe;
  std::map<std::string, RSet> at;

  const RSet& operator()(const std::string& x) const;
  void set(const std::string& x, RSet s) { at[x] = std::move(s); }
};

TriposPredicate make_predicate(std::vector<std::string> universe);

/// Evaluation context: the ambient model with its kit, the sampled
/// parameters standing in for "for all p in P", a step budget per
/// application, and a carrier-element pool standing in for "for all b in A".
/// Certificates are relative to these samples.
struct Ctx {
  kit::KitTable* kit;
  std::vector<std::string> params;
  long long fuel = 100000;
  std::vector<std::string> pool;

  const PpcaModel& model() const { return kit->model(); }
  EvalOutcome apply1(const std::string& p, const std::string& a,
                     const std::string& b) const;
  EvalOutcome apply1v(const std::string& p, const PpcaModel::Val& a,
                      const std::string& b) const;
};

Ctx make_ctx(kit::KitTable& kit, long long fuel = 100000);

// Heyting prealgebra structure on Pred(X).
TriposPredicate h_top(const std::vector<std::string>& universe);
TriposPredicate h_bot(const std::vector<std::string>& universe);
TriposPredicate h_and(Ctx& ctx, const TriposPredicate& phi, const TriposPredicate& psi);
TriposPredicate h_or(Ctx& ctx, const TriposPredicate& phi, const TriposPredicate& psi);
TriposPredicate h_imp(Ctx& ctx, const TriposPredicate& phi, const TriposPredicate& psi);
TriposPredicate h_neg(Ctx& ctx, const TriposPredicate& phi);

struct EntailmentCert {
  enum class Verdict { Verified, Counterexample, Inconclusive };
  Verdict verdict;
  std::string witness;
  std::string x, b, p;  // failing triple for a counterexample
  std::string detail;
};

/// Does `witness . b` realize psi(x) for every point x, every enumerable
/// b in phi(x), and every sampled parameter?
EntailmentCert check_entailment(Ctx& ctx, const TriposPredicate& phi,
                                const TriposPredicate& psi, const std::string& witness);

/// The structural-rule combinators of the Heyting proof, synthesized from
/// certified input witnesses and returned as uniform carrier elements.
enum class Rule {
  Trans,       // inputs a: phi<=psi, b: psi<=chi  ->  <x> b (a x)
  AndPair,     // inputs a: chi<=phi, b: chi<=psi  ->  <u> pair (a u) (b u)
  AndFst,      // input a: chi<=phi/\psi           ->  <u> fst (a u)
  AndSnd,      //                                   ->  <u> snd (a u)
  OrElim,      // inputs a: phi<=chi, b: psi<=chi  ->  <u> if (fst u) (a (snd u)) (b (snd u))
  OrInl,       //                                   ->  <u> pair true u
  OrInr,       //                                   ->  <u> pair false u
  ImpCurry,    // input b: phi/\psi<=chi           ->  <u><v> b (pair u v)
  ImpUncurry,  // input a: phi<=psi->chi           ->  <x> a (fst x) (snd x)
  BotElim,     // K K
  TopIntro,    // K K
};
std::string synth_witness(Ctx& ctx, Rule rule, const std::vector<std::string>& inputs);

struct SynthResult {
  std::string witness;
  EntailmentCert cert;
};
SynthResult synthesize(Ctx& ctx, Rule rule, const std::vector<std::string>& inputs,
                       const TriposPredicate& from, const TriposPredicate& to);

/// A map of finite universes.
struct FiniteMap {
  std::vector<std::string> dom, cod;
  std::map<std::string, std::string> fn;

  const std::string& operator()(const std::string& y) const;
  bool total() const;
  bool surjective() const;
  std::vector<std::string> fiber(const std::string& x) const;

  static FiniteMap identity(const std::vector<std::string>& u);
};

/// Reindexing acts by precomposition: (r* phi)(y) = phi(r(y)).
TriposPredicate reindex(const TriposPredicate& phi, const FiniteMap& r);

/// (exists_r phi)(x) = union of phi(y) over r(y) = x.
TriposPredicate exists_along(Ctx& ctx, const FiniteMap& r, const TriposPredicate& phi);

/// The guarded universal quantifier: a realizes (forall_r phi)(x) when for
/// every y in the fiber, a . b realizes phi(y) for every pooled b and every
/// sampled parameter.
TriposPredicate forall_along(Ctx& ctx, const FiniteMap& r, const TriposPredicate& phi);

/// The simple variant: intersection over the fiber; everything at an empty
/// fiber. Equivalent to forall_along exactly when r is surjective.
TriposPredicate forall_prime(Ctx& ctx, const FiniteMap& r, const TriposPredicate& phi);

/// Witness transports from the quantifier adjunction proofs.
std::string forall_adjoint_to_reindexed(Ctx& ctx, const std::string& a);  // <x> a x K
std::string forall_adjoint_from_reindexed(Ctx& ctx, const std::string& b);  // <x><d> b x
const char* forall_prime_to_forall_witness();  // K
std::string forall_to_prime_witness(Ctx& ctx);  // <x> x K, needs r surjective

struct PullbackSquare {
  FiniteMap r;  // Y -> X
  FiniteMap u;  // Y -> Z
  FiniteMap q;  // Z -> W
  FiniteMap v;  // X -> W
};

struct BCResult {
  enum class Kind { Verified, Counterexample, NotAPullback };
  Kind kind;
  std::string detail;
};

/// Extensional Beck-Chevalley check for forall along the square, on the
/// given predicate over Z and the context's element pool.
BCResult beck_chevalley(Ctx& ctx, const PullbackSquare& sq, const TriposPredicate& phi);

}  // namespace prw::tripos

#endif
