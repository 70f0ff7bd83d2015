#include <chrono>
#include <iostream>

#include "doctest.h"
#include "reflexa/error.hpp"
#include "reflexa/harness.hpp"
#include "support.hpp"

using namespace reflexa;
using namespace testsupport;

TEST_CASE("certificates over the small corpus") {
  for (const auto& a : small_corpus(F2())) {
    auto t0 = std::chrono::steady_clock::now();
    Certificate q = certify_quasi_abelian(a);
    Certificate ab = certify_abelian(a);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << a->name() << " dim " << a->dim() << " qa " << to_string(q.outcome) << " pred " << q.predicted
              << " found " << q.counterexample_found << " | ab " << to_string(ab.outcome) << " pred "
              << ab.predicted << " found " << ab.counterexample_found << " | " << s << "s\n";
    for (const auto& w : q.witnesses) std::cout << "   qa " << w.kind << ": " << w.text << "\n";
    for (const auto& w : ab.witnesses) std::cout << "   ab " << w.kind << ": " << w.text << "\n";
    CHECK(q.outcome != Outcome::theorem_violation);
    CHECK(ab.outcome != Outcome::theorem_violation);
  }
}
