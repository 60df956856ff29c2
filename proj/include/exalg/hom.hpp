#pragma once

#include "exalg/ring.hpp"

namespace exalg {

enum class HomKind {
  EvalVariable,        // R[X] -> R, X |-> point
  ReduceModIdeal,      // R -> R/I for supported pairs
  ExcisionRetraction,  // R(+)I -> R, (r,i) |-> r
  ExcisionSum,         // R(+)I -> R, (r,i) |-> r+i
  Inclusion,           // R -> R[X]
  SwanWeibelPhi,       // graded A -> A[T], degree-d part scaled by T^d
  LocalizationMap,     // Z -> Z_(p)
};

struct RingHom {
  HomKind kind{};
  RingPtr domain;
  RingPtr codomain;
  std::optional<RElem> point;  // EvalVariable
  std::optional<Ideal> ideal;  // ReduceModIdeal

  static RingHom eval_variable(RingPtr poly_ring, RElem point);
  static RingHom reduce_mod(RingPtr domain, Ideal ideal);
  static RingHom excision_retraction(RingPtr excision_ring);
  static RingHom excision_sum(RingPtr excision_ring);
  static RingHom inclusion(RingPtr base, RingPtr poly_ring);
  static RingHom swan_weibel(RingPtr graded_ring, const std::string& hvar);
  static RingHom localization(const Int& p);
};

RElem hom_apply(const RingHom& h, const RElem& a);

}  // namespace exalg
