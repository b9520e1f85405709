// Small tour of the library: build a surface, dump its fundamental data at a
// point, run one identity check, and probe the finite type of its Gauss map.

#include <complex>
#include <cstdio>

#include "beltrami/chentype.hpp"
#include "beltrami/geometry.hpp"
#include "beltrami/identities.hpp"
#include "beltrami/surface.hpp"

int main() {
    using namespace beltrami;

    SurfaceSpec sphere = catalog_get("sphere", {{"r", 2.0}});
    const Point2 p{1.3, 1.1};

    FrameData fr = frame(sphere, p, 5);
    std::printf("sphere(r=2) at (%.2f, %.2f):\n", p.u, p.v);
    std::printf("  H = %.12f   K = %.12f\n", fr.H.value(), fr.K.value());
    std::printf("  det I = %.6f, det II = %.6f, det III = %.6f\n", fr.I.det.value(),
                fr.II.det.value(), fr.III.det.value());

    // the second-kind operator of III fixes the normal up to a factor of 2
    Vec3 lap_n = values(laplacian(FormKind::III, fr, fr.n));
    Vec3 n = values(fr.n);
    std::printf("  D_III n - 2n = (%.2e, %.2e, %.2e)\n", lap_n[0] - 2 * n[0], lap_n[1] - 2 * n[1],
                lap_n[2] - 2 * n[2]);

    IdentityOptions opt;
    opt.check_filter = {"ID01", "ID24"};
    IdentityReport rep = run_identities(sphere, {8, 8}, opt);
    for (const auto& c : rep.checks)
        std::printf("  %s: %s (max residual %.3e)\n", c.id.c_str(), to_string(c.verdict),
                    c.max_residual);

    TypeProbeResult res = probe(sphere, FormKind::II, FieldKind::position);
    std::printf("  probe(II, position): %s", res.verdict_string().c_str());
    if (!res.eigenvalues.empty())
        std::printf(", eigenvalue %.9f (expected 2/r = 1)", res.eigenvalues[0].real());
    std::printf("\n");
    return 0;
}
