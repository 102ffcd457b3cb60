#pragma once

#include "afflog/core.hpp"
#include "afflog/formula.hpp"

namespace afflog {

/// Variable assignment into a fixed structure's carrier, by index.
using Assignment = std::map<std::string, int>;

/// Exact evaluation; sup/inf are max/min over the finite carrier.
/// Throws DomainError on unbound variables or unknown symbols.
Rational eval(const Structure& s, const FormulaPtr& f, const Assignment& a);

int eval_term(const Structure& s, const Term& t, const Assignment& a);

/// Values of f over all |carrier|^n tuples in table order, where `vars`
/// fixes the order of the free variables (must cover them exactly).
std::vector<Rational> eval_all(const Structure& s, const FormulaPtr& f,
                               const std::vector<std::string>& vars);

}  // namespace afflog
