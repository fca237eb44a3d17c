"""Reference computations that share no code path with the library kernels."""

from fractions import Fraction

ORDER = {"F": 0, "H": 1, "E": 2}


def _f_words(f_coeffs):
    """f(H) as words: {('H',)*k: c}."""
    return {("H",) * k: Fraction(c) for k, c in enumerate(f_coeffs) if c}


def rewrite_words(words, f_coeffs, max_steps=200000):
    """Normal-order a combination of words in E, F, H by single adjacent swaps.

    EF -> FE + f(H),  EH -> HE - E,  HF -> FH - F.
    Returns {(a, b, c): coeff} for F^a H^b E^c.
    """
    fw = _f_words(f_coeffs)
    todo = {tuple(w): Fraction(c) for w, c in words.items() if c}
    done = {}
    steps = 0
    while todo:
        w, c = todo.popitem()
        steps += 1
        if steps > max_steps:
            raise RuntimeError("rewriting did not terminate")
        pos = next((i for i in range(len(w) - 1) if ORDER[w[i]] > ORDER[w[i + 1]]), None)
        if pos is None:
            key = (w.count("F"), w.count("H"), w.count("E"))
            done[key] = done.get(key, 0) + c
            continue
        pre, pair, post = w[:pos], w[pos:pos + 2], w[pos + 2:]
        out = [(pre + (pair[1], pair[0]) + post, c)]
        if pair == ("E", "F"):
            out += [(pre + hw + post, c * fc) for hw, fc in fw.items()]
        elif pair == ("E", "H"):
            out.append((pre + ("E",) + post, -c))
        elif pair == ("H", "F"):
            out.append((pre + ("F",) + post, -c))
        for nw, nc in out:
            v = todo.get(nw, 0) + nc
            if v:
                todo[nw] = v
            else:
                todo.pop(nw, None)
    return {k: v for k, v in done.items() if v}


def element_words(terms):
    """{(a,b,c): coeff} -> {word: coeff}."""
    return {("F",) * a + ("H",) * b + ("E",) * c: v for (a, b, c), v in terms.items()}


def oracle_product(terms_x, terms_y, f_coeffs):
    words = {}
    for wx, cx in element_words(terms_x).items():
        for wy, cy in element_words(terms_y).items():
            w = wx + wy
            words[w] = words.get(w, 0) + cx * cy
    return rewrite_words(words, f_coeffs)


def eval_poly(coeffs, x):
    return sum(Fraction(c) * Fraction(x) ** k for k, c in enumerate(coeffs))


def lattice_count(k, w):
    """#{(i, j) : i*w + j <= k}, by enumeration."""
    return sum(1 for i in range(k + 1) for j in range(k + 1) if i * w + j <= k)
