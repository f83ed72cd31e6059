"""Re-check the figure pairs at graph level and on statevectors."""

from glocal.equivalence import decide_lc1, decide_lu_small, verify_certificate
from glocal.io import load_fixture
from glocal.moves import RLC
from glocal.suites import FIGURE_RLC, figure_instance, rlc_instance_deviation


def main():
    for name in sorted(FIGURE_RLC):
        g1, g2, s, r = figure_instance(name)
        cert_ok = verify_certificate(g1, [RLC(r, s)], g2)
        dev = rlc_instance_deviation(g1, s, r)
        lc1 = decide_lc1(g1, g2).verdict
        print(f"{name}: r-LC certificate {cert_ok}, statevector deviation {dev:.2e}, LC1 verdict {lc1}")
    a, b = load_fixture("fig1_c43"), load_fixture("fig1_c43_prime")
    cert = decide_lu_small(a.graph, b.graph)
    ob = cert.obstruction or {}
    print(f"fig1: {cert.verdict}, first obstruction {ob.get('kind')} on "
          f"{[a.labels[u] for u in ob.get('set', [])]} ({ob.get('dimension_g1')} vs {ob.get('dimension_g2')})")


if __name__ == "__main__":
    main()
