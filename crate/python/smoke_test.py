"""Smoke test for the epg extension module."""

import epg

gf4 = epg.Field(4)
assert gf4.order == 4 and gf4.characteristic == 2
w = gf4.pick_omega(2)
assert w == 2
assert gf4.mul(w, w) == gf4.add(w, 1)
assert gf4.mul(w, gf4.inv(w)) == 1

pg = epg.build_pg(2, 2)
assert (pg.rank(), pg.point_count(), len(pg.lines())) == (3, 7, 7)

m = epg.build_epg(2, 2, 1)
assert (m.rank(), m.point_count()) == (3, 13)
assert epg.epg_size_formula(3, 2, 1) == 13
assert [epg.growth_rate_formula(n, 2, 1) for n in (3, 4, 5)] == [13, 29, 61]
assert epg.kung_bound(4, 3) == 21

line = epg.build_epg(1, 2, 1)
assert epg.is_isomorphic(line, epg.build_pg(1, 4))
pairs = epg.find_isomorphism(line, epg.build_pg(1, 4))
assert pairs is not None and len(pairs) == 5

for omega in (2, 3):
    assert epg.is_isomorphic(epg.build_extension_rep(gf4, omega, 3).simplify(), m)

assert epg.has_pg_minor(epg.build_epg(3, 2, 1), 3, 4) is None
assert epg.has_pg_minor(m, 2, 4) is not None

cols = [[gf4.mul(w, x) for x in c] for c in pg.columns()]
scaled = epg.Matroid(gf4, 3, cols)
normal = epg.normalize_spanning_pg(scaled, 2)
assert all(x < 2 for c in normal.columns() for x in c)

assert epg.Matroid.from_text(m.to_text()).to_text() == m.to_text()
assert pg.is_weakly_round()

report = epg.verify(["fields"], seed=7)
assert report["pass"] and report["seed"] == 7 and report["records"]

try:
    epg.Field(6)
except ValueError:
    pass
else:
    raise AssertionError("GF(6) accepted")

print("smoke test passed")
