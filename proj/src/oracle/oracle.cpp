#include "itnet/oracle.hpp"

#include "itnet/syntax.hpp"

namespace itnet {

Term eval_cbn(const Term& start, Fuel& fuel) {
  Term t = start;
  // Redexes in tail position continue the loop instead of recursing.
  while (true) {
    fuel.consume();
    switch (t.kind()) {
      case TermKind::Abs:
      case TermKind::True:
      case TermKind::False:
      case TermKind::Zero:
      case TermKind::Suc:
      case TermKind::Nil:
      case TermKind::Cons:
        return t;
      case TermKind::Var:
        throw StuckTerm("free variable '" + t.name() + "' reached by evaluation");
      case TermKind::App: {
        Term f = eval_cbn(t.fun(), fuel);
        if (f.kind() != TermKind::Abs)
          throw StuckTerm("application of non-function '" + to_string(f) + "'");
        t = subst(f.body(), f.name(), t.arg());
        break;
      }
      case TermKind::IterBool: {
        Term b = eval_cbn(t.scrutinee(), fuel);
        if (b.kind() == TermKind::True) {
          t = t.first_param();
        } else if (b.kind() == TermKind::False) {
          t = t.second_param();
        } else {
          throw StuckTerm("iterbool over non-boolean '" + to_string(b) + "'");
        }
        break;
      }
      case TermKind::IterNat: {
        Term n = eval_cbn(t.scrutinee(), fuel);
        if (n.kind() == TermKind::Zero) {
          t = t.second_param();
        } else if (n.kind() == TermKind::Suc) {
          Term rest = Term::iter_nat(t.name(), t.first_param(), t.second_param(), n.pred(), t.site());
          t = subst(t.first_param(), t.name(), rest);
        } else {
          throw StuckTerm("iternat over non-numeral '" + to_string(n) + "'");
        }
        break;
      }
      case TermKind::IterList: {
        Term l = eval_cbn(t.scrutinee(), fuel);
        if (l.kind() == TermKind::Nil) {
          t = t.second_param();
        } else if (l.kind() == TermKind::Cons) {
          Term rest = Term::iter_list(t.name(), t.name2(), t.first_param(), t.second_param(),
                                      l.tail(), t.site());
          t = subst(subst(t.first_param(), t.name(), l.head()), t.name2(), rest);
        } else {
          throw StuckTerm("iterlist over non-list '" + to_string(l) + "'");
        }
        break;
      }
    }
  }
}

Term eval_cbn(const Term& t, std::uint64_t fuel) {
  Fuel f(fuel);
  return eval_cbn(t, f);
}

Term deep_eval(const Term& t, Fuel& fuel) {
  Term z = eval_cbn(t, fuel);
  if (z.kind() == TermKind::Suc) return Term::suc(deep_eval(z.pred(), fuel));
  if (z.kind() == TermKind::Cons) {
    Term h = deep_eval(z.head(), fuel);
    return Term::cons(h, deep_eval(z.tail(), fuel));
  }
  return z;
}

Term deep_eval(const Term& t, std::uint64_t fuel) {
  Fuel f(fuel);
  return deep_eval(t, f);
}

}  // namespace itnet
