#pragma once

#include <string>
#include <vector>

#include "hypfl/indices.hpp"

namespace hypfl {

/// Outcome of an index-condition predicate with the reason that decided it.
struct PredicateResult {
  bool holds = false;
  /// "clause (k)" for the first satisfied clause, otherwise the failed gate.
  std::string decided_by;
  /// Every satisfied numbered clause (a tuple may satisfy several).
  std::vector<int> clauses;

  explicit operator bool() const { return holds; }
};

/// d(1/r + 1/p - 1), the critical smoothness of both embedding criteria.
Rational critical_smoothness(const IndexTuple& t);

/// B^s_{p,q} ↪ FL^r.
PredicateResult besov_embeds_fl(const IndexTuple& t);

/// F^s_{p,q} ↪ FL^r. Requires p < ∞.
PredicateResult triebel_embeds_fl(const IndexTuple& t);

/// -κ|1/r - 1/2| for 1 <= r <= ∞.
Rational required_order_fl(const ExtendedIndex& r, int kappa);

/// -κ|1/q - 1/2| - d(1/q - 1/p) for 1 <= q < p <= ∞; admissible orders are strictly below.
Rational required_order_fl_pq(const ExtendedIndex& p, const ExtendedIndex& q, int kappa, int d);

/// T ∈ I^m, rank κ: B^s_{p,q} -> FL^r sufficient condition (embedding and order).
PredicateResult fio_besov_to_fl_admissible(const IndexTuple& t, const Rational& m, int kappa);

/// Same for F^s_{p,q} -> FL^r.
PredicateResult fio_triebel_to_fl_admissible(const IndexTuple& t, const Rational& m, int kappa);

/// FL^p -> FL^q with m strictly below required_order_fl_pq.
PredicateResult fio_fl_pq_admissible(const ExtendedIndex& p, const ExtendedIndex& q, const Rational& m, int kappa,
                                     int d);

}  // namespace hypfl
