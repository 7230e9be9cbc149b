// Walks through the main computations for one lens space L_q(dlk; k, l).

#include "qnc/bundle.hpp"
#include "qnc/kth.hpp"
#include "qnc/pairing.hpp"

#include <iostream>

int main()
{
    const int k = 2, l = 3, d = 3;
    const double q = 0.5;

    const qnc::BundleCertificate cert = qnc::bundle_generators(k, l);
    std::cout << "xi_1 = " << cert.xi[0] << "\n";
    std::cout << "partition of unity: " << std::boolalpha << qnc::verify_partition_of_unity(cert) << "\n";

    const qnc::PairingMatrix pm = qnc::pairing_matrix(k, l, q);
    std::cout << "M =\n";
    for (const auto& row : pm.M) {
        for (long long v : row) std::cout << ' ' << v;
        std::cout << "\n";
    }
    std::cout << "largest certified bound: " << pm.max_bound << "\n";

    const qnc::KGroups g = qnc::gysin_kgroups(qnc::to_int_matrix(pm.M), d);
    std::cout << "K0 = " << g.K0 << "\nK1 = " << g.K1 << "\nK^0 = " << g.K0_hom << "\nK^1 = " << g.K1_hom << "\n";
}
