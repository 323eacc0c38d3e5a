"""Atlas term-order factory.

The twelve base orders are global Lex or GRevLex over one of the six
block permutations of (A, q, p), each block carrying the canonical
column-major / coordinate order.  Product orders with A below p and
per-point refinements are built from the same sequences.
"""

from .polyring import GRevLex, Lex, ProductBlock


def block_sequence(universe, prefixes):
    """Variable indices for group labels matching the given prefixes, in order."""
    out = []
    for prefix in prefixes:
        for lab in universe.group_labels:
            if lab == prefix or lab.startswith(prefix):
                out.extend(universe.group_vars[lab])
    return out


BLOCK_PERMS = (("A", "q", "p"), ("A", "p", "q"), ("q", "A", "p"),
               ("q", "p", "A"), ("p", "A", "q"), ("p", "q", "A"))


def atlas_order(universe, scheme="grevlex", blocks=("A", "q", "p")):
    """One of the twelve orders: global scheme over the permuted blocks."""
    seq = block_sequence(universe, blocks)
    cls = {"lex": Lex, "grevlex": GRevLex}[scheme]
    return cls(universe, seq, name=f"{scheme}-{''.join(blocks)}")


def twelve_orders(universe):
    return [atlas_order(universe, scheme, perm)
            for perm in BLOCK_PERMS for scheme in ("lex", "grevlex")]


def product_order_A_below_p(universe, scheme_p="grevlex", scheme_A="grevlex",
                            rng=None):
    """Product order with A < p: compare the p-part first.

    With an rng, the variable sequences inside each block are shuffled
    (a sampled member of the infinite family of such orders).
    """
    pseq = block_sequence(universe, ("p",))
    aseq = block_sequence(universe, ("A",))
    qseq = block_sequence(universe, ("q",))
    if rng is not None:
        rng.shuffle(pseq)
        rng.shuffle(aseq)
    cls = {"lex": Lex, "grevlex": GRevLex}
    blocks = [cls[scheme_p](universe, pseq, name=f"{scheme_p}-p"),
              cls[scheme_A](universe, aseq, name=f"{scheme_A}-A")]
    if qseq:
        blocks.append(Lex(universe, qseq, name="lex-q"))
    return ProductBlock(blocks, name=f"{scheme_p}p-over-{scheme_A}A")


def restricted_order(universe, scheme="grevlex", blocks=("q", "p")):
    """Restriction of an atlas order to the named blocks (specialized rings)."""
    seq = block_sequence(universe, blocks)
    cls = {"lex": Lex, "grevlex": GRevLex}[scheme]
    return cls(universe, seq, name=f"{scheme}-{''.join(blocks)}-restricted")


def sampled_p_order(universe, rng, point=None):
    """A random monomial order on the p-variables (scheme + shuffle)."""
    seq = block_sequence(universe, ("p",))
    rng.shuffle(seq)
    scheme = rng.choice(["lex", "grevlex"])
    cls = {"lex": Lex, "grevlex": GRevLex}[scheme]
    return cls(universe, seq, name=f"sampled-{scheme}-p")


def per_point_refinement(universe, shape, scheme="grevlex", with_q=True):
    """Product over world-point blocks refining the per-point orders.

    Block k holds (q_k and) the p_ik variables of point k, ordered by the
    restricted atlas order; S-pairs across blocks have coprime leads.
    """
    cls = {"lex": Lex, "grevlex": GRevLex}[scheme]
    blocks = []
    for j in range(1, shape.n + 1):
        labels = []
        if with_q:
            labels.append("q" if shape.n == 1 else f"q{j}")
        labels.extend(f"p{i}" if shape.n == 1 else f"p{i}{j}"
                      for i in range(1, shape.m + 1))
        seq = []
        for lab in labels:
            seq.extend(universe.group_vars[lab])
        blocks.append(cls(universe, seq, name=f"{scheme}-pt{j}"))
    return ProductBlock(blocks, name=f"perpoint-{scheme}")
