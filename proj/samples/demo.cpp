// Walk through the V_6 model: spacelike IP holds, timelike IP fails on a named pair,
// and Θ on the full timelike 4-plane has rank equal to ℓ.
#include <iostream>

#include "csg/csg.hpp"

using namespace csg;

int main(int argc, char** argv) {
    const std::size_t s = 2;
    ModelSpace m = argc > 1 ? load_model(argv[1]) : model_V3s(s);
    std::cout << "dim " << m.dim() << ", valid " << validate_model(m).ok << "\n";

    for (auto want : {CausalType::Spacelike, CausalType::Timelike}) {
        CheckOptions opt;
        if (argc == 1) opt.named_planes = v3s_named_planes(s, 2, want);
        Verdict v = check_ip(m, want, 20, 1, opt);
        std::cout << v.property << ": " << (v.holds ? "holds" : "fails");
        if (!v.holds) std::cout << " (" << v.witnesses[0].origin << " vs " << v.witnesses[1].origin << ")";
        std::cout << "\n";
    }
    if (argc > 1) return 0;

    for (const auto& nf : v3s_named_planes(s, 2 * s, CausalType::Timelike)) {
        Matrix th = theta(m, nf.frame);
        std::cout << nf.name << ": rank theta " << mat_rank(th) << ", ell " << ell(m, nf.frame) << "\n";
    }
    PlaneFrame fr = random_frame(m, 2, CausalType::Spacelike, 5);
    std::cout << render_text(to_json(jordan_profile(*skew_curv(m, fr).normalized_square)));
}
