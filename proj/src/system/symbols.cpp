#include "itnet/symbols.hpp"

#include <stdexcept>

namespace itnet {

const char* to_string(IteratorKind k) {
  switch (k) {
    case IteratorKind::Bool:
      return "bool";
    case IteratorKind::Nat:
      return "nat";
    case IteratorKind::List:
      return "list";
  }
  return "?";
}

Term IteratorDescriptor::with_scrutinee(const Term& scrutinee) const {
  switch (kind) {
    case IteratorKind::Bool:
      return Term::iter_bool(params[0], params[1], scrutinee, site);
    case IteratorKind::Nat:
      return Term::iter_nat(binder, params[0], params[1], scrutinee, site);
    case IteratorKind::List:
      return Term::iter_list(binder, binder2, params[0], params[1], scrutinee, site);
  }
  throw std::logic_error("bad iterator kind");
}

void SymbolTable::add(IteratorDescriptor d) {
  std::size_t index = descriptors_.size();
  if (!site_index_.emplace(d.site, index).second)
    throw std::logic_error("duplicate iterator site " + std::to_string(d.site));
  symbol_index_.emplace(d.syntactic, index);
  symbol_index_.emplace(d.computation, index);
  descriptors_.push_back(std::move(d));
}

const IteratorDescriptor* SymbolTable::by_site(Site s) const {
  auto it = site_index_.find(s);
  return it == site_index_.end() ? nullptr : &descriptors_[it->second];
}

const IteratorDescriptor* SymbolTable::by_symbol(SymbolId s) const {
  auto it = symbol_index_.find(s);
  return it == symbol_index_.end() ? nullptr : &descriptors_[it->second];
}

}  // namespace itnet
