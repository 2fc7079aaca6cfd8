"""CLI invocations over the fixture corpus, with the exit code each one should give."""
import os

JOBS = [
    ("validate", ["validate", "sobj_cofibrant.json"], 0),
    ("nerve", ["nerve", "category_z2.json"], 0),
    ("lift_trivial", ["lift", "square_trivial.json"], 0),
    ("lift_endpoints", ["lift", "square_endpoints.json"], 1),
    ("classify", ["classify", "map_collapse.json", "--class", "split_epi"], 0),
    ("factor_projective", ["factor", "map_boundary.json"], 0),
    ("factor_soa", ["factor", "map_empty_d2.json", "--mode", "soa", "--trunc", "2", "--stages", "3"], 0),
    ("factor_soa_partial", ["factor", "map_empty_d2.json", "--mode", "soa", "--trunc", "2", "--stages", "1"], 2),
    ("boxcheck", ["boxcheck", "map_boundary.json", "map_boundary.json", "map_collapse.json", "--trunc", "2"], 0),
    ("extensive_finset", ["extensive", "--base", "finset"], 0),
    ("extensive_pointed", ["extensive", "--base", "pointed-join"], 1),
    ("cofibrant_yes", ["cofibrant", "sobj_cofibrant.json"], 0),
    ("cofibrant_no", ["cofibrant", "sobj_noncofibrant.json"], 1),
    ("reedy", ["reedy", "sobj_map.json"], 0),
    ("fib_sset", ["fib", "map_collapse.json", "--trunc", "2"], 1),
    ("fib_sobj", ["fib", "sobj_identity.json", "--projectives", "projectives.json"], 0),
    ("weq", ["weq", "sobj_identity.json"], 0),
    ("hocolim", ["hocolim", "diagram_span.json"], 0),
    ("holim", ["holim", "diagram_loop.json", "--trunc", "2"], 0),
    ("kan_left", ["kan", "diagram_span.json", "--functor", "functor_span_terminal.json"], 0),
    ("kan_right", ["kan", "diagram_loop.json", "--side", "right", "--trunc", "2",
                   "--functor", "functor_cospan_terminal.json"], 0),
]


def argv(job, corpus_dir, out=None):
    """``job`` with corpus file names made absolute, plus ``--out`` when given."""
    args = [os.path.join(corpus_dir, a) if a.endswith(".json") else a for a in job]
    return args + (["--out", out] if out else [])
