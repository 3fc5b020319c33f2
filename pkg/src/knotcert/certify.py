"""Replay of the metabolizer case analysis as auditable certificates.

For each prime p dividing |H_1(Y_q)| every deck-invariant metabolizer of the
p-part is examined. Its nonzero elements are reduced modulo conjugation and
the deck action, written in the labeled eigen-generators of the summands,
and evaluated summand by summand:

* a summand with no companion on the relevant band, or with a companion of
  trivial Alexander polynomial, contributes an exact zero;
* otherwise the companion's Levine-Tristram orbit sum and the d-norm status
  of its discriminant are computed exactly.

An element whose summand values sum to a nonzero signature, or which has a
single nonzero summand with a non-norm discriminant, kills the metabolizer.
Metabolizers surviving these tests are checked against d-invariant bounds
from a cited ledger. A prime all of whose equivariant metabolizers are
killed obstructs sliceness.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import modp
from .cover import (CoverError, CoverHomology, LabeledGenerator, cover_homology, frac_str,
                    labeled_generators, prime_power_base)
from .knots import (DOUBLE_FORM, TREFOIL_FORM, Companion, KnotExpr, KnotTerm, alexander,
                    expr_to_json, rn_satellite)
from .metabolizer import (DEFAULT_BUDGET, Metabolizer, MetabolizerError, classify,
                          enumerate_metabolizers, equivariant_metabolizers_direct,
                          frame_from_generators)
from .obstruction import (Bound, CGSignatureQuery, DLedger, MissingLedgerEntry, SignatureError,
                          bounds_exclude_zero, discriminant, exists_negative_b, is_d_norm,
                          signature_sum)
from .primegen import PrimePairFamily, multiplicative_order

OBSTRUCTED = "obstructed"
INCONCLUSIVE = "inconclusive"
NO_OBSTRUCTION_NEEDED = "inconclusive: no obstruction needed"
NOTHING_TO_OBSTRUCT = "inconclusive: nothing to obstruct"
KILL_KINDS = ("cg-signature", "cg-discriminant", "ledger-d", "none")

DEFAULT_COEFF_BOUND = 1


class CertifyError(ValueError):
    pass


# ---------------------------------------------------------------------------
# summand values

@dataclass(frozen=True)
class TermValue:
    """Casson-Gordon shadow of one summand at a character a * X."""
    term: int
    generator: str
    coefficient: int
    exact_zero: bool
    reason: str
    signature: Optional[int] = None
    discriminant: Optional[int] = None
    nonnorm: Optional[bool] = None
    witness: Optional[Tuple[int, int, int]] = None
    orbit: Optional[Tuple[int, int, int]] = None

    def to_json(self) -> dict:
        d = {"term": self.term, "generator": self.generator, "coefficient": self.coefficient,
             "exact_zero": self.exact_zero, "reason": self.reason}
        if not self.exact_zero:
            d["signature"] = self.signature
            d["discriminant"] = self.discriminant
            d["nonnorm"] = self.nonnorm
            if self.orbit is not None:
                d["orbit"] = list(self.orbit)
            if self.witness is not None:
                d["witness"] = {"p": self.witness[0], "exponent": self.witness[1],
                                "order": self.witness[2]}
        return d


class _Context:
    """Everything needed to evaluate elements at one prime."""

    def __init__(self, expr: KnotExpr, h: CoverHomology, p: int, ledger: Optional[DLedger]):
        self.expr = expr
        self.h = h
        self.p = p
        self.q = h.q
        self.ledger = ledger
        try:
            self.gens: List[LabeledGenerator] = labeled_generators(expr, self.q, p, h)
        except CoverError:
            self.gens = []
        self.socle_idx = [i for i, d in enumerate(h.invariant_factors) if d % p == 0]
        self.cols = [self._socle(g.element) for g in self.gens]
        self._cache: Dict[Tuple[int, int], TermValue] = {}

    def _socle(self, x) -> Optional[List[int]]:
        out = []
        for i, d in enumerate(self.h.invariant_factors):
            step = d // self.p if d % self.p == 0 else None
            if step is None:
                if x[i] % d:
                    return None
            else:
                if x[i] % step:
                    return None
                out.append((x[i] // step) % self.p)
        return out

    def decompose(self, x) -> Optional[Tuple[int, ...]]:
        """Coordinates of x in the labeled generators mod p, if x lies in their span."""
        y = self._socle(x)
        if y is None or not self.gens:
            return None
        k, n = len(y), len(self.gens)
        rows = [[self.cols[j][i] for j in range(n)] + [y[i]] for i in range(k)]
        red, piv = modp.rref(rows, self.p)
        if n in piv:
            return None
        sol = [0] * n
        for r, c in zip(red, piv):
            sol[c] = r[n] % self.p
        return tuple(sol)

    def element_of(self, coords) -> Tuple[int, ...]:
        x = [0] * self.h.rank
        for a, g in zip(coords, self.gens):
            if a:
                x = [u + a * v for u, v in zip(x, g.element)]
        return self.h.reduce(x)

    def partner_pairing(self, g: LabeledGenerator) -> int:
        for o in self.gens:
            if o.term == g.term and o is not g:
                v = self.h.lk(g.element, o.element) * self.p
                if v.denominator == 1 and int(v) % self.p:
                    return int(v) % self.p
        return 1

    def term_value(self, gi: int, a: int) -> TermValue:
        key = (gi, a)
        if key not in self._cache:
            self._cache[key] = self._term_value(gi, a)
        return self._cache[key]

    def _term_value(self, gi: int, a: int) -> TermValue:
        g = self.gens[gi]
        term = self.expr.terms[g.term]
        comp = term.knot.companion(g.index)
        if comp is None:
            return TermValue(g.term, g.name, a, True, "no companion on this band")
        delta = alexander(comp.matrix)
        if delta.is_trivial():
            return TermValue(g.term, g.name, a, True, "companion has trivial Alexander polynomial")
        v = term.companion_matrix(comp)
        c = g.eigenvalue
        b = a * self.partner_pairing(g) % self.p
        sig: Optional[int] = None
        orbit = None
        if self.q == 3:
            try:
                sig = signature_sum(CGSignatureQuery(v, self.p, c, b))
                orbit = (b, b * c % self.p, b * c * c % self.p)
            except SignatureError:
                sig = None
        disc = discriminant(delta, self.p)
        nonnorm = witness = None
        if disc.is_square:
            cert = is_d_norm(disc.value, self.p)
            nonnorm, witness = (not cert.verdict), cert.witness
        return TermValue(g.term, g.name, a, False, f"companion {comp.label}", sig,
                         disc.value, nonnorm, witness, orbit)

    # -- d-invariant ledger -------------------------------------------------

    def orbit_name(self, g: LabeledGenerator, a: int) -> str:
        p, lam = self.p, g.own_eigenvalue
        mult = {pow(lam, k, p) * s % p for k in range(multiplicative_order(lam, p)) for s in (1, -1)}
        name = f"{lam}-eigenspace orbit"
        if len(mult) < p - 1:
            rep = min(a * m % p for m in mult)
            name += f" of {rep}"
        return name

    def ledger_key(self, gi: int, a: int) -> Tuple[str, int, str]:
        g = self.gens[gi]
        return (self.expr.terms[g.term].knot.d_name, self.q, self.orbit_name(g, a))


def _terms_of(ctx: _Context, coords: Sequence[int]) -> Optional[List[Tuple[int, int]]]:
    """Per summand, the single (generator index, coefficient) it carries;
    None when some summand mixes generators."""
    per: Dict[int, List[Tuple[int, int]]] = {}
    for gi, a in enumerate(coords):
        if a:
            per.setdefault(ctx.gens[gi].term, []).append((gi, a))
    if any(len(v) > 1 for v in per.values()):
        return None
    return [v[0] for _, v in sorted(per.items())]


def _cg_kill(ctx: _Context, terms: List[Tuple[int, int]]):
    vals = [ctx.term_value(gi, a) for gi, a in terms]
    live = [v for v in vals if not v.exact_zero]
    if live and all(v.signature is not None for v in live):
        total = sum(v.signature for v in live)
        if total != 0:
            return "cg-signature", {"signature_total": total,
                                    "terms": [v.to_json() for v in vals]}
    if len(live) == 1 and live[0].nonnorm:
        return "cg-discriminant", {"terms": [v.to_json() for v in vals]}
    return None


def _ledger_kill(ctx: _Context, terms: List[Tuple[int, int]]):
    bounds: List[Bound] = []
    rec = []
    missing = []
    for gi, a in terms:
        key = ctx.ledger_key(gi, a)
        try:
            b = ctx.ledger.lookup(*key)
        except MissingLedgerEntry:
            missing.append(list(key))
            continue
        term = ctx.expr.terms[ctx.gens[gi].term]
        if term.mirrored:
            b = b.negate()
        bounds.append(b)
        rec.append({"generator": ctx.gens[gi].name, "coefficient": a, "knot": key[0],
                    "q": key[1], "orbit": key[2], "mirrored": term.mirrored,
                    "bound": b.to_json(), "citation": b.citation})
    if missing:
        return None, missing
    if bounds and bounds_exclude_zero(bounds):
        return ("ledger-d", {"terms": rec}), []
    return None, []


# ---------------------------------------------------------------------------
# metabolizer evaluation

@dataclass(frozen=True)
class MetabolizerVerdict:
    prime: int
    index: int
    generators: Tuple[Tuple[int, ...], ...]
    coordinates: Tuple[Tuple[int, ...], ...]
    family: str
    killed_by: str
    element: Optional[Tuple[int, ...]]
    detail: Mapping
    citations: Tuple[str, ...]

    def to_json(self) -> dict:
        d = {"prime": self.prime, "index": self.index,
             "generators": [list(g) for g in self.generators],
             "labeled_coordinates": [list(c) for c in self.coordinates],
             "family": self.family, "killed_by": self.killed_by,
             "detail": self.detail, "citations": list(self.citations)}
        if self.element is not None:
            d["element"] = list(self.element)
        return d


def _orbit_reps(ctx: _Context, m: Metabolizer) -> List[Tuple[Tuple, Tuple[int, ...], Optional[Tuple[int, ...]]]]:
    """(sort key, element, labeled coordinates) for one element per +-deck orbit."""
    h, p = ctx.h, ctx.p
    gcoords = [ctx.decompose(g) for g in m.generators]
    if ctx.gens and all(c is not None for c in gcoords):
        return _orbit_reps_labeled(ctx, [c for c in gcoords if any(c)])
    elems = [x for x in m.elements(h) if any(x) and h.element_order(x) == p]
    seen = set()
    reps = []
    for x in sorted(elems):
        if x in seen:
            continue
        orb = set()
        y = x
        for _ in range(ctx.q):
            orb.add(y)
            orb.add(h.mul(-1, y))
            y = h.deck(y)
        seen |= orb
        best = min(orb)
        reps.append(((len(ctx.gens) + 1, best), best, None))
    reps.sort(key=lambda t: t[0])
    return reps


def _orbit_reps_labeled(ctx: _Context, basis: List[Tuple[int, ...]]):
    """Orbit representatives computed in labeled coordinates, where the deck
    acts diagonally by the generator eigenvalues."""
    h, p = ctx.h, ctx.p
    rows = modp.rref([list(b) for b in basis], p)[0] if basis else []
    if not rows:
        return []
    n = len(ctx.gens)
    r = np.array(rows, dtype=np.int64)
    coeffs = np.indices((p,) * len(rows)).reshape(len(rows), -1).T[1:].astype(np.int64)
    pts = coeffs @ r % p
    evs = np.array([g.eigenvalue for g in ctx.gens], dtype=np.int64)
    best = pts.copy()
    y = pts
    for _ in range(ctx.q):
        for img in (y, (-y) % p):
            diff = img != best
            first = diff.argmax(axis=1)
            rowsel = np.arange(len(img))
            less = diff.any(axis=1) & (img[rowsel, first] < best[rowsel, first])
            best[less] = img[less]
        y = y * evs % p
    uniq = np.unique(best, axis=0)
    support = (uniq != 0).sum(axis=1)
    order = np.argsort(support, kind="stable")
    return [((int(support[i]), c), None, c)
            for i in order for c in [tuple(int(t) for t in uniq[i])]]


def _evaluate(ctx: _Context, idx: int, m: Metabolizer, family: str) -> MetabolizerVerdict:
    reps = _orbit_reps(ctx, m)
    coords = []
    for g in m.generators:
        c = ctx.decompose(g)
        if c is not None:
            coords.append(c)
    unevaluable = 0
    for _, x, c in reps:
        terms = _terms_of(ctx, c) if c is not None else None
        if terms is None:
            unevaluable += 1
            continue
        kill = _cg_kill(ctx, terms)
        if kill:
            kind, detail = kill
            return MetabolizerVerdict(ctx.p, idx, m.generators, tuple(coords), family, kind,
                                      x if x is not None else ctx.element_of(c),
                                      {"labeled_element": list(c), **detail}, ())
    missing_all = []
    if ctx.ledger is not None:
        for _, x, c in reps:
            terms = _terms_of(ctx, c) if c is not None else None
            if terms is None:
                continue
            kill, missing = _ledger_kill(ctx, terms)
            missing_all.extend(k for k in missing if k not in missing_all)
            if kill:
                kind, detail = kill
                cites = tuple(sorted({t["citation"] for t in detail["terms"] if t["citation"]}))
                return MetabolizerVerdict(ctx.p, idx, m.generators, tuple(coords), family, kind,
                                          x if x is not None else ctx.element_of(c),
                                          {"labeled_element": list(c), **detail}, cites)
    detail = {"orbit_representatives": len(reps), "unevaluable": unevaluable}
    if missing_all:
        detail["missing_ledger_entries"] = missing_all
    return MetabolizerVerdict(ctx.p, idx, m.generators, tuple(coords), family, "none",
                              None, detail, ())


def _family_tag(ctx: _Context, m: Metabolizer) -> str:
    if len(ctx.gens) != 4:
        return ""
    try:
        tag, r = classify(m, ctx.h, frame_from_generators(ctx.gens, ctx.p))
    except MetabolizerError:
        return ""
    if tag == "mixed-pure-pair":
        names = {g.name for g in ctx.gens if g.element in set(m.elements(ctx.h))}
        return "mixed-pure-pair (" + ",".join(sorted(names)) + ")"
    return tag if r is None else f"{tag} r={r}"


def _eval_job(args):
    ctx, idx, m, fam = args
    return _evaluate(ctx, idx, m, fam)


# ---------------------------------------------------------------------------
# certificates

@dataclass
class ObstructionCertificate:
    expression: list
    q: int
    homology: dict
    verdict: str
    reason: str = ""
    primes: Dict[int, List[MetabolizerVerdict]] = field(default_factory=dict)
    obstructing_primes: List[int] = field(default_factory=list)
    labeled_generators: Dict[int, list] = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def metabolizers(self, p: Optional[int] = None) -> List[MetabolizerVerdict]:
        if p is not None:
            return self.primes.get(p, [])
        return [v for p in sorted(self.primes) for v in self.primes[p]]

    def to_json(self) -> dict:
        out = {
            "expression": self.expression,
            "q": self.q,
            "homology": self.homology,
            "verdict": self.verdict,
            "reason": self.reason,
            "obstructing_primes": list(self.obstructing_primes),
            "primes": [{"prime": p,
                        "labeled_generators": self.labeled_generators.get(p, []),
                        "equivariant_metabolizers": len(vs),
                        "metabolizers": [v.to_json() for v in vs]}
                       for p, vs in sorted(self.primes.items())],
        }
        if self.extra:
            out["extra"] = self.extra
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def _gen_json(g: LabeledGenerator) -> dict:
    return {"name": g.name, "term": g.term, "index": g.index, "eigenvalue": g.eigenvalue,
            "own_eigenvalue": g.own_eigenvalue, "element": list(g.element)}


def obstruct_single(expr: KnotExpr, q: int = 3, ledger: Optional[DLedger] = None,
                    budget: int = DEFAULT_BUDGET, workers: int = 1) -> ObstructionCertificate:
    """Run every available obstruction against every equivariant metabolizer of H_1(Y_q)."""
    if prime_power_base(q) is None or q % 2 == 0:
        raise CertifyError("q must be an odd prime power")
    h = cover_homology(expr.matrix, q)
    ej = expr_to_json(expr)
    if h.order == 1:
        return ObstructionCertificate(ej, q, h.to_json(), NO_OBSTRUCTION_NEEDED,
                                      "H_1 of the cover is trivial")
    if h.order % 2 == 0:
        return ObstructionCertificate(ej, q, h.to_json(), INCONCLUSIVE,
                                      "H_1 of the cover has 2-torsion; abstaining")
    r = isqrt(h.order)
    if r * r != h.order:
        raise CertifyError(f"|H_1(Y_{q})| = {h.order} is not a square")
    per = equivariant_metabolizers_direct(h, budget)
    cert = ObstructionCertificate(ej, q, h.to_json(), INCONCLUSIVE)
    for p in sorted(per):
        ctx = _Context(expr, h, p, ledger)
        jobs = [(ctx, i, m, _family_tag(ctx, m)) for i, m in enumerate(per[p])]
        if workers > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(workers) as ex:
                verdicts = list(ex.map(_eval_job, jobs))
        else:
            verdicts = [_eval_job(j) for j in jobs]
        cert.primes[p] = verdicts
        cert.labeled_generators[p] = [_gen_json(g) for g in ctx.gens]
        if verdicts and all(v.killed_by != "none" for v in verdicts):
            cert.obstructing_primes.append(p)
    if cert.obstructing_primes:
        cert.verdict = OBSTRUCTED
        cert.reason = f"every equivariant metabolizer is killed at p = {cert.obstructing_primes[0]}"
    else:
        cert.reason = "some equivariant metabolizer survives at every prime"
    _soundness_gate(cert)
    return cert


def _soundness_gate(cert: ObstructionCertificate):
    for v in cert.metabolizers():
        if v.killed_by == "ledger-d" and not v.citations:
            raise AssertionError("ledger kill without citation")
    if cert.verdict == OBSTRUCTED:
        ok = any(cert.primes[p] and all(v.killed_by != "none" for v in cert.primes[p])
                 for p in cert.primes)
        if not ok:
            raise AssertionError("obstructed verdict without a fully killed prime")


# ---------------------------------------------------------------------------
# families

DEFAULT_J_ALPHA = Companion(1, TREFOIL_FORM, "T", d_neutral=True)
DEFAULT_J_BETA = Companion(0, DOUBLE_FORM, "D")


def family_knot(n: int, j_alpha: Companion = DEFAULT_J_ALPHA,
                j_beta: Companion = DEFAULT_J_BETA):
    return rn_satellite(n, j_alpha, j_beta, label=f"R_{n}")


def combination_expr(coeffs: Mapping[int, int], j_alpha: Companion = DEFAULT_J_ALPHA,
                     j_beta: Companion = DEFAULT_J_BETA) -> KnotExpr:
    """sum_n a_n (K_n # -rho(K_n))."""
    out = KnotExpr()
    for n in sorted(coeffs):
        a = coeffs[n]
        if a:
            e = KnotExpr.of(family_knot(n, j_alpha, j_beta))
            out = out + (e + (-e.reverse())) * a
    return out


def obstruct_combination(family: PrimePairFamily, coeffs: Mapping[int, int],
                         companions: Tuple[Companion, Companion] = (DEFAULT_J_ALPHA, DEFAULT_J_BETA),
                         ledger: Optional[DLedger] = None, q: int = 3,
                         coeff_bound: int = DEFAULT_COEFF_BOUND, budget: int = DEFAULT_BUDGET,
                         workers: int = 1) -> ObstructionCertificate:
    members = {e.n: e for e in family.elements}
    for n, a in coeffs.items():
        if a and n not in members:
            raise CertifyError(f"n = {n} is not a member of the family")
        if abs(a) > coeff_bound:
            raise CertifyError(f"|a_{n}| = {abs(a)} exceeds the coefficient bound {coeff_bound}")
    live = {n: a for n, a in sorted(coeffs.items()) if a}
    j_alpha, j_beta = companions
    expr = combination_expr(live, j_alpha, j_beta)
    if not live:
        h = cover_homology(expr.matrix, q)
        return ObstructionCertificate(expr_to_json(expr), q, h.to_json(), NOTHING_TO_OBSTRUCT,
                                      "all coefficients vanish")
    cert = obstruct_single(expr, q, ledger, budget, workers)
    comps = []
    for n in live:
        el = members[n]
        for p in (el.p, el.q):
            if p == 1 or p not in cert.primes:
                continue
            c = (n + 1) * pow(n, -1, p) % p
            witnesses = {}
            for lam in sorted({c, pow(c, -1, p)}):
                try:
                    witnesses[str(lam)] = exists_negative_b(j_alpha.matrix, p, lam)
                except ValueError:
                    witnesses[str(lam)] = None
            survivors = [v.index for v in cert.primes[p]
                         if v.killed_by not in ("cg-signature", "cg-discriminant")]
            comps.append({"n": n, "prime": p, "negative_b": witnesses,
                          "cg_survivors": survivors,
                          "forced_shape": [cert.primes[p][i].family for i in survivors]})
    cert.extra = {"coefficients": {str(n): a for n, a in live.items()}, "components": comps}
    return cert


# ---------------------------------------------------------------------------
# trivial-Alexander summands

def _delta_one(term: KnotTerm) -> bool:
    return alexander(term.knot.pattern).is_trivial()


def reduction_report(expr: KnotExpr, q: int = 3, ledger: Optional[DLedger] = None,
                     budget: int = DEFAULT_BUDGET) -> dict:
    """Basis-independent summary of every computed quantity."""
    h = cover_homology(expr.matrix, q)
    rep = {"invariant_factors": list(h.invariant_factors), "order": h.order}
    if h.order > 1 and h.order % 2:
        all_m = enumerate_metabolizers(h, budget)
        rep["metabolizers"] = len(all_m)
        rep["equivariant"] = {str(p): len(v) for p, v in
                              sorted(equivariant_metabolizers_direct(h, budget).items())}
    primes = {}
    for p in h.primes():
        try:
            gens = labeled_generators(expr, q, p, h)
        except CoverError:
            gens = []
        primes[str(p)] = {
            "generators": [[g.name, g.eigenvalue] for g in gens],
            "linking": [[frac_str(h.lk(a.element, b.element)) for b in gens] for a in gens],
            "deck": [[g.name, h.deck(g.element) == h.mul(g.eigenvalue, g.element)] for g in gens],
        }
    rep["primes"] = primes
    comps = []
    for t in expr.terms:
        for c in t.knot.companions:
            d = alexander(c.matrix)
            entry = {"label": c.label, "alexander": str(d)}
            for p in h.primes():
                if d.is_trivial():
                    continue
                disc = discriminant(d, p)
                entry[str(p)] = {"discriminant": disc.value,
                                 "norm": is_d_norm(disc.value, p).verdict if disc.is_square else None}
            comps.append(entry)
    rep["companions"] = comps
    if h.order > 1 and h.order % 2 == 0:
        rep["certificate"] = None
    else:
        cert = obstruct_single(expr, q, ledger, budget)
        rep["verdict"] = cert.verdict
        rep["kills"] = sorted(
            [v.prime, v.family, v.killed_by,
             modp.rref([list(c) for c in v.coordinates], v.prime)[0] if v.coordinates else [],
             v.detail.get("labeled_element")] for v in cert.metabolizers())
    return rep


def verify_reduction_lemma(expr: KnotExpr, q: int = 3, ledger: Optional[DLedger] = None,
                           budget: int = DEFAULT_BUDGET) -> dict:
    """Check that deleting the Delta = 1 summands changes nothing computed."""
    kept = KnotExpr(tuple(t for t in expr.terms if not _delta_one(t)))
    dropped = [t.name for t in expr.terms if _delta_one(t)]
    if not dropped:
        raise CertifyError("expression has no summand with trivial Alexander polynomial")
    with_l = reduction_report(expr, q, ledger, budget)
    without = reduction_report(kept, q, ledger, budget)
    diffs = sorted(k for k in set(with_l) | set(without) if with_l.get(k) != without.get(k))
    report = {"q": q, "dropped": dropped, "checked": sorted(set(with_l)),
              "identical": not diffs, "differences": diffs, "report": without}
    if diffs:
        raise AssertionError(f"trivial-Alexander summands changed {diffs}")
    return report


# ---------------------------------------------------------------------------
# sign identity on K # -rho(K)

def sign_identity_check(expr: KnotExpr, q: int, p: int) -> List[dict]:
    """For every band with an evaluable companion in the first summand, compare
    its signature value with the same band of the second summand."""
    h = cover_homology(expr.matrix, q)
    ctx = _Context(expr, h, p, None)
    rows = []
    for i, g in enumerate(ctx.gens):
        if g.term != 0:
            continue
        partner = [j for j, o in enumerate(ctx.gens) if o.term == 1 and o.index == g.index]
        if not partner:
            continue
        j = partner[0]
        for a in range(1, p):
            v0 = ctx.term_value(i, a)
            if v0.exact_zero or v0.signature is None:
                continue
            # the role-swapped character hits the same b after the sign flip of the pairing
            b0 = a * ctx.partner_pairing(g) % p
            a1 = b0 * pow(ctx.partner_pairing(ctx.gens[j]), -1, p) % p
            v1 = ctx.term_value(j, a1)
            rows.append({"generator": g.name, "b": b0, "value": v0.signature,
                         "swapped": ctx.gens[j].name, "swapped_value": v1.signature})
    return rows
