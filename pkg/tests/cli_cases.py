"""Golden CLI cases: ``name -> (argv, expected exit code)``.

Every argv is run from ``tests/data`` with ``--no-timing`` appended, and the
report is compared byte for byte with ``tests/golden/<name>.<json|txt>``.
``python tests/regen_golden.py`` rewrites the golden files after an
intentional format change.
"""

SUITE = ["abelian_d1_n2", "abelian_d2_n3", "lie_d2", "e22_d2", "yau_lie", "yau_e22", "ternary_d2", "yau_ternary"]
BINARY = ["abelian_d1_n2", "lie_d2", "e22_d2", "yau_lie", "yau_e22"]
TERNARY = ["abelian_d2_n3", "ternary_d2", "yau_ternary"]

CASES = {}

for name in SUITE:
    CASES[f"check_{name}"] = (["check", f"{name}.json"], 0)
    for p in (1, 2):
        CASES[f"cohomology_{name}_p{p}"] = (["cohomology", f"{name}.json", "--degree", str(p)], 0)
    CASES[f"cohomology_{name}_rep_p2"] = (
        ["cohomology", f"{name}.json", "-p", "2", "--coefficients", f"{name}_rep.json"], 0)
    CASES[f"derivations_{name}"] = (["derivations", f"{name}.json"], 0)
    CASES[f"embed_check_{name}"] = (["embed-check", f"{name}.json", "-p", "3" if name in BINARY else "2"], 0)
for name in TERNARY:
    CASES[f"dn_{name}"] = (["dn", f"{name}.json"], 0)

CASES.update({
    "check_perturbed": (["check", "perturbed_e22.json"], 1),
    "check_nonmultiplicative": (["check", "nonmultiplicative.json"], 0),
    "check_prime_field_file": (["check", "e22_fp.json"], 0),
    "check_field_override": (["check", "e22_d2.json", "--field", "Fp:7"], 0),
    "check_bad_coefficient": (["check", "bad_coeff.json"], 2),
    "check_bad_syntax": (["check", "bad_syntax.json"], 2),
    "check_bad_index": (["check", "bad_index.json"], 2),
    "check_duplicate_entry": (["check", "duplicate_entry.json"], 2),
    "check_missing_file": (["check", "no_such_file.json"], 2),
    "check_text": (["check", "perturbed_e22.json", "--format", "text"], 1),
    "cohomology_abelian_line_representatives": (
        ["cohomology", "abelian_d1_n2.json", "-p", "2", "--representatives"], 0),
    "cohomology_ternary_p3_rep": (
        ["cohomology", "ternary_d2.json", "-p", "3", "--coefficients", "ternary_d2_rep.json", "--representatives"], 0),
    "cohomology_degree_zero": (["cohomology", "e22_d2.json", "--degree", "0"], 2),
    "cohomology_nonmultiplicative": (["cohomology", "nonmultiplicative.json", "-p", "1"], 1),
    "cohomology_perturbed": (["cohomology", "perturbed_e22.json", "-p", "2"], 1),
    "cohomology_wrong_coefficients": (
        ["cohomology", "yau_e22.json", "-p", "2", "--coefficients", "e22_d2_rep.json"], 1),
    "cohomology_text": (["cohomology", "e22_d2.json", "-p", "2", "--format", "text"], 0),
    "derivations_rep": (["derivations", "yau_e22.json", "--coefficients", "yau_e22_rep.json"], 0),
    "deform_e22_class": (["deform", "e22_d2.json", "--f1-class", "1", "--order", "3"], 0),
    "deform_e22_zero": (["deform", "e22_d2.json", "--f1", "zero_f1.json", "-s", "4"], 0),
    "deform_e22_coboundary": (["deform", "e22_d2.json", "--f1", "e22_coboundary.json"], 0),
    "deform_e22_noncocycle": (["deform", "e22_d2.json", "--f1", "e22_noncocycle.json"], 1),
    "deform_abelian_line_obstructed": (["deform", "abelian_d1_n2.json", "--f1", "abelian_d1_f1.json"], 1),
    "deform_class_out_of_range": (["deform", "e22_d2.json", "--f1-class", "2"], 2),
    "deform_text": (["deform", "abelian_d1_n2.json", "--f1-class", "1", "--format", "text"], 1),
    "extend_cocycle_e22": (["extend-cocycle", "e22_d2.json", "--cocycle", "e22_h2_class.json"], 0),
    "extend_cocycle_e22_compare": (
        ["extend-cocycle", "e22_d2.json", "--cocycle", "e22_h2_shifted.json", "--compare", "e22_h2_class.json"], 0),
    "extend_cocycle_e22_compare_distinct": (
        ["extend-cocycle", "e22_d2.json", "--cocycle", "e22_h2_class.json", "--compare", "zero_f1.json"], 0),
    "extend_cocycle_noncocycle": (["extend-cocycle", "e22_d2.json", "--cocycle", "e22_noncocycle.json"], 1),
    "bracket_identity_pi": (["bracket", "e22_d2.json", "e22_identity.json", "e22_pi.json"], 0),
    "bracket_pi_pi": (["bracket", "e22_d2.json", "e22_pi.json", "e22_pi.json"], 0),
    "bracket_ternary": (["bracket", "ternary_d2.json", "ternary_f1.json", "ternary_f2.json"], 0),
    "twist_e22": (["twist", "e22_d2.json", "--morphism", "scale_morphism.json"], 0),
    "twist_not_a_morphism": (["twist", "e22_d2.json", "--morphism", "bad_morphism.json"], 1),
    "twist_already_twisted": (["twist", "yau_e22.json", "--morphism", "scale_morphism.json"], 1),
    "dn_binary": (["dn", "yau_lie.json"], 0),
    "dn_nonmultiplicative": (["dn", "nonmultiplicative.json"], 1),
    "embed_check_nonmultiplicative": (["embed-check", "nonmultiplicative.json"], 1),
})


def golden_name(name, argv):
    return f"{name}.txt" if "text" in argv else f"{name}.json"
