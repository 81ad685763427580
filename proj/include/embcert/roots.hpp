#pragma once

#include <optional>
#include <string>
#include <vector>

#include "embcert/interval.hpp"
#include "embcert/unipoly.hpp"

namespace embcert {

/// One isolated complex root. `exact` is set when the root was pinned to a
/// rational point (then the box has zero width). `certified` means the box
/// provably contains exactly one root of the square-free part.
struct RootBox {
    CBox box;
    bool certified = false;
    std::optional<G> exact;

    G approx() const { return box.center(); }
};

struct IsolationResult {
    std::vector<RootBox> roots;
    bool all_certified = true;
    std::string warning;
};

/// Certified complex root isolation. One box per distinct root of the
/// square-free part of p, widths <= precision. Reporting layer only: no
/// pass/fail decision elsewhere may depend on it.
IsolationResult isolate_roots(const UniPoly& p, const Rat& precision);

/// Interval-Newton contraction test: when it returns a box, that box lies in
/// the interior of `b` and contains exactly one root of p.
std::optional<CBox> newton_contract(const UniPoly& p, const UniPoly& dp, const CBox& b);

/// Refine a certified box below `precision` by repeated interval Newton steps.
std::optional<CBox> newton_refine(const UniPoly& p, const UniPoly& dp, CBox b, const Rat& precision);

} // namespace embcert
