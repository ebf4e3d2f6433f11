# A full walkthrough of the decision loop on a two-stage example.
#
# The framework lives in space: one alternating quadruple sits on the
# z-axis, and four more vertices are placed on rays so that a second
# alternating quadruple appears only after the axis is projected out and
# the survivors are slid into a common plane.  The loop needs exactly two
# balance passes, then the exit check clears the last vertex pair.

from bipartite_rigidity import rigidity_test, verify_chain
from bipartite_rigidity.fixtures import fixture

fw = fixture("projection_k44").framework
print("class P:", [tuple(map(str, p)) for p in fw.points_p])
print("class Q:", [tuple(map(str, q)) for q in fw.points_q])

verdict, chain = rigidity_test(fw)
print("\nverdict:", verdict.value)
for rec in chain.records:
    print(f"\npass {rec.index}: {rec.kind}")
    print("  certified so far: P", rec.known_p, " Q", rec.known_q)
    if rec.cone_point is not None:
        print("  cone point:", tuple(map(str, rec.cone_point)))
        print("  slide functional:", tuple(map(str, rec.functional)))
    if rec.radon is not None:
        print("  support found: P", rec.support_p, " Q", rec.support_q)
        print("  stress rank:", rec.stress.rank)

print("\nindependent replay of the whole chain:", verify_chain(fw, chain))

# The flip side: an example that loses its freedom only in the quotient.
flexible = fixture("flexible_k42").framework
verdict, chain = rigidity_test(flexible)
print("\ntwo off-line vertices over a pinned core:", verdict.value)
print("passes:", [rec.kind for rec in chain.records])
