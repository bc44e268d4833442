// Builds the rank-2 linear monad on P^3 and prints its certificates.
#include <iostream>

#include <monad_forge.hpp>

using namespace monad_forge;

int main()
{
    const auto inst = build_floystad(1, 1);
    std::cout << "B = [";
    for (std::size_t c = 0; c < inst.B.cols(); ++c) {
        std::cout << (c ? ", " : "") << inst.B.at(0, c).to_string();
    }
    std::cout << "]\n";

    const auto check = verify_monad(inst, ExhaustiveStrategy{{3, 5}});
    std::cout << "monad axioms: " << to_string(check.verdict) << "\n";

    const Polarization pol(inst.spec.space, inst.spec.weights);
    const auto num = kernel_numerics(inst.spec, pol);
    std::cout << "T: rank " << num.rank << ", c1 " << num.c1.to_string() << ", slope " << to_string(num.slope) << "\n";

    const auto stab = stability_certificate(inst, pol);
    std::cout << "stability: " << to_string(stab.verdict) << "\n";
    SimplicityOptions opt;
    opt.stability_verdict = stab.verdict;
    const auto simple = simplicity_certificate(inst, pol, opt);
    std::cout << "simplicity: " << to_string(simple.verdict) << "\n";
    std::cout << dump(to_json(simple));
    return simple.verdict == Verdict::simple ? 0 : 1;
}
