"""Golden CLI transcripts: (name, argv).  Paths are relative to tests/data."""

CASES = [
    ("validate_torus", ["validate", "torus.cc"]),
    ("validate_flipped", ["validate", "disk_flipped.cc"]),
    ("betti_torus", ["betti", "torus.cc"]),
    ("betti_core", ["betti", "core.cc"]),
    ("euler_disk", ["euler", "disk.cc"]),
    ("harmonic_torus_k1", ["harmonic", "torus.cc", "--deg", "1"]),
    ("harmonic_torus_weighted", ["harmonic", "torus.cc", "--deg", "1", "--weights", "torus.w"]),
    ("harmonic_disk_rel_k2", ["harmonic", "disk.cc", "--deg", "2", "--rel", "disk.boundary.sub"]),
    ("harmonic_end_weighted", ["harmonic", "end.cc", "--deg", "1", "--weights", "end.w", "--rel", "end.boundary.sub"]),
    ("hodge_split_torus", ["hodge-split", "torus.cc", "--deg", "1", "--cochain", "torus1.cochain", "--weights", "torus.w"]),
    ("pair_audit_disk", ["pair-audit", "disk.cc", "--sub", "disk.boundary.sub"]),
    ("pair_audit_annulus", ["pair-audit", "annulus.cc", "--sub", "annulus.boundary.sub"]),
    ("im_rel_abs_ptorus", ["im-rel-abs", "ptorus.cc", "--sub", "ptorus.boundary.sub", "--deg", "1"]),
    ("im_rel_abs_annulus", ["im-rel-abs", "annulus.cc", "--sub", "annulus.boundary.sub", "--deg", "1"]),
    ("ker_pullback_core", ["ker-pullback", "core.cc", "--fiber", "core.fiber.sub", "--deg", "1"]),
    ("double_interval", ["double", "interval.cc", "--sub", "interval.boundary.sub"]),
    ("double_annulus", ["double", "annulus.cc", "--sub", "annulus.boundary.sub"]),
    ("group_closure_rot4", ["group-closure", "rot4.glz"]),
    ("group_closure_shear", ["group-closure", "shear.glz"]),
    ("group_closure_notunimodular", ["group-closure", "notunimodular.glz"]),
    ("equiv_betti_minus_id", ["equiv-betti", "minus_id.glz"]),
    ("chi_equivariant_minus_id", ["chi-equivariant", "minus_id.glz"]),
    ("q_end_cover3", ["q-end", "--end", "nu=4,n=4,cover=3"]),
    ("q_end_minus_id", ["q-end", "--end", "nu=2,n=4,group=minus_id.glz"]),
    ("chi_l2_trivial", ["chi-l2", "--chi", "0", "--end", "nu=3,n=4"]),
    ("chi_l2_minus_id", ["chi-l2", "--chi", "1", "--end", "nu=2,n=4,group=minus_id.glz,cover=1"]),
    ("chi_l2_parabolic", ["chi-l2", "--chi", "0", "--end", "nu=2,n=2,parabolic"]),
    ("chi_l2_warped_cone", ["chi-l2-warped", "--chi", "3", "--betti", "1,3,3,1", "--case", "cone", "--n", "4"]),
    ("chi_l2_warped_shrinking", ["chi-l2-warped", "--chi", "3", "--betti", "1,3,3,1", "--case", "shrinking", "--n", "4"]),
    ("chi_l2_warped_odd", ["chi-l2-warped", "--chi", "3", "--betti", "1,1,1", "--case", "cone", "--n", "3"]),
    ("sweep_m1_k1", ["sweep", "--nu", "3", "--m", "1", "--deg", "1", "--shells", "2,4,8"]),
    ("sweep_m0_k3", ["sweep", "--nu", "3", "--m", "0", "--deg", "3", "--shells", "1,2,3"]),
    ("missing_file", ["betti", "nope.cc"]),
    ("unknown_flag", ["betti", "torus.cc", "--bogus"]),
]
