#include "hypfl/predicates.hpp"

namespace hypfl {

namespace {

Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

const Rational kHalf(1, 2);

PredicateResult fail(std::string why) { return {false, std::move(why), {}}; }

PredicateResult from_clauses(std::vector<int> clauses) {
  if (clauses.empty()) return fail("no clause");
  PredicateResult res{true, "clause (" + std::to_string(clauses.front()) + ")", std::move(clauses)};
  return res;
}

// Gates shared by both embedding criteria.
bool common_gates(const IndexTuple& t, PredicateResult& out) {
  if (ExtendedIndex(2) < t.p) {
    out = fail("p<=2 fails");
    return false;
  }
  if (t.p.reciprocal() + t.r.reciprocal() < Rational(1)) {
    out = fail("1/p+1/r>=1 fails");
    return false;
  }
  return true;
}

void require_r_banach(const ExtendedIndex& r) {
  if (r < ExtendedIndex(1)) throw ValidationError("r must lie in [1, inf] for operator boundedness, got " + r.str());
}

}  // namespace

Rational critical_smoothness(const IndexTuple& t) {
  return Rational(t.d) * (t.r.reciprocal() + t.p.reciprocal() - 1);
}

PredicateResult besov_embeds_fl(const IndexTuple& t) {
  t.validate();
  PredicateResult res;
  if (!common_gates(t, res)) return res;
  const Rational crit = critical_smoothness(t);
  std::vector<int> clauses;
  if (t.q <= t.r && t.s >= crit) clauses.push_back(1);
  if (t.q > t.r && t.s > crit) clauses.push_back(2);
  return from_clauses(std::move(clauses));
}

PredicateResult triebel_embeds_fl(const IndexTuple& t) {
  t.validate();
  if (t.p.is_infinite()) throw ValidationError("Triebel-Lizorkin embedding requires p < inf");
  PredicateResult res;
  if (!common_gates(t, res)) return res;
  const Rational crit = critical_smoothness(t);
  const ExtendedIndex pc = t.p.conjugate();
  std::vector<int> clauses;
  if (t.r < t.p && t.s > crit) clauses.push_back(1);
  if (t.r >= t.p && t.r == pc && pc < t.q && t.s > crit) clauses.push_back(2);
  if (t.r >= t.p && t.r >= t.q && t.s >= crit) clauses.push_back(3);
  if (t.p <= t.r && t.r < pc && t.s >= crit) clauses.push_back(4);
  return from_clauses(std::move(clauses));
}

Rational required_order_fl(const ExtendedIndex& r, int kappa) {
  require_r_banach(r);
  return -Rational(kappa) * abs(r.reciprocal() - kHalf);
}

Rational required_order_fl_pq(const ExtendedIndex& p, const ExtendedIndex& q, int kappa, int d) {
  if (q < ExtendedIndex(1)) throw ValidationError("q must be >= 1, got " + q.str());
  if (!(q < p)) throw ValidationError("FL^p -> FL^q threshold requires q < p, got q=" + q.str() + " p=" + p.str());
  return -Rational(kappa) * abs(q.reciprocal() - kHalf) - Rational(d) * (q.reciprocal() - p.reciprocal());
}

PredicateResult fio_besov_to_fl_admissible(const IndexTuple& t, const Rational& m, int kappa) {
  require_r_banach(t.r);
  PredicateResult emb = besov_embeds_fl(t);
  if (!emb.holds) return emb;
  if (m > required_order_fl(t.r, kappa)) return fail("order m<=-kappa|1/r-1/2| fails");
  return emb;
}

PredicateResult fio_triebel_to_fl_admissible(const IndexTuple& t, const Rational& m, int kappa) {
  require_r_banach(t.r);
  PredicateResult emb = triebel_embeds_fl(t);
  if (!emb.holds) return emb;
  if (m > required_order_fl(t.r, kappa)) return fail("order m<=-kappa|1/r-1/2| fails");
  return emb;
}

PredicateResult fio_fl_pq_admissible(const ExtendedIndex& p, const ExtendedIndex& q, const Rational& m, int kappa,
                                     int d) {
  const Rational threshold = required_order_fl_pq(p, q, kappa, d);
  if (m < threshold) return {true, "m<threshold", {}};
  return fail("strict order m<threshold fails");
}

}  // namespace hypfl
