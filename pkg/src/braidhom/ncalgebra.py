"""Presented noncommutative algebras with a PBW-type normal form.

A monomial is an exponent vector over the ordered generator list.  Its
letter word lists, generator by generator, |e| copies of the letter
(g, sign(e)); for a generator with integer exponents the negative letter is
a separate symbol (a^-1 is the letter written d for the quantum group).
Rewrite rules are keyed by adjacent letter pairs that are out of order.
Multiplication appends letters of the right factor one at a time to the
left factor, applying a rule whenever the last letter and the new letter
form a rule pair.

Elements are plain dicts {monomial: coefficient} with no zero entries.
"""

import itertools
import re

from .scalars import ScalarError, p_power, parse_scalar


class AlgebraError(ValueError):
    pass


class IllegalExponent(AlgebraError):
    pass


class IncompleteRules(AlgebraError):
    pass


# element helpers

def add_term(d, key, c):
    if not c:
        return
    v = d.get(key)
    if v is None:
        d[key] = c
    else:
        v = v + c
        if v:
            d[key] = v
        else:
            del d[key]


def add_scaled(d, other, c):
    for k, v in other.items():
        add_term(d, k, c * v)


def scale(d, c):
    if not c:
        return {}
    return {k: v * c for k, v in d.items()}


def add(*elements):
    out = {}
    for e in elements:
        add_scaled(out, e, 1)
    return out


def sub(a, b):
    out = dict(a)
    for k, v in b.items():
        add_term(out, k, -v)
    return out


class Window:
    """Truncation by total filtration, optionally at one exact multidegree."""

    def __init__(self, max_filtration, multidegree=None, exact=False):
        if max_filtration < 0:
            raise AlgebraError("max_filtration must be nonnegative")
        self.max_filtration = max_filtration
        self.multidegree = None if multidegree is None else tuple(multidegree)
        self.exact = exact

    def __repr__(self):
        return "Window(%d, %r)" % (self.max_filtration, self.multidegree)


class Presentation:
    """Generators, exponent kinds, pair rewrite rules, grading and filtration.

    rules maps (letter, letter) -> element, where a letter is (gen, +1|-1).
    """

    def __init__(self, name, generators, exponents, rules, grading, filtration,
                 field, aliases=None):
        self.name = name
        self.generators = list(generators)
        self.ngens = len(self.generators)
        self.exponents = list(exponents)
        self.grading = [tuple(g) for g in grading]
        self.filtration_weights = list(filtration)
        self.field = field
        self.aliases = dict(aliases or {})
        self.one_mon = (0,) * self.ngens
        self.unit = {self.one_mon: field.one}
        self.rules = {}
        for (l1, l2), rhs in rules.items():
            self.rules[(l1, l2)] = {m: field(c) for m, c in rhs.items() if c}
        self._mul_letter_cache = {}
        self._mul_cache = {}
        self._gen_index = {g: i for i, g in enumerate(self.generators)}

    # monomials and letters

    def letter_mon(self, letter):
        g, s = letter
        m = [0] * self.ngens
        m[g] = s
        return tuple(m)

    def letters(self, m):
        out = []
        for g, e in enumerate(m):
            if e:
                s = 1 if e > 0 else -1
                out.extend([(g, s)] * abs(e))
        return out

    def last_letter(self, m):
        for g in range(self.ngens - 1, -1, -1):
            e = m[g]
            if e:
                return (g, 1 if e > 0 else -1)
        return None

    def split_last(self, m):
        """(m'', letter) with m = m''·letter as words; None for the unit."""
        h = self.last_letter(m)
        if h is None:
            return None
        rest = list(m)
        rest[h[0]] -= h[1]
        return tuple(rest), h

    def length(self, m):
        return sum(abs(e) for e in m)

    def is_normal(self, m):
        ls = self.letters(m)
        for i in range(len(ls) - 1):
            if (ls[i], ls[i + 1]) in self.rules:
                return False
        for g, e in enumerate(m):
            if e < 0 and self.exponents[g] != "int":
                return False
        return True

    # multiplication

    def mul_letter(self, m, letter):
        key = (m, letter)
        hit = self._mul_letter_cache.get(key)
        if hit is not None:
            return hit
        h = self.last_letter(m)
        one = self.field.one
        if h is None:
            res = {self.letter_mon(letter): one}
        elif (h, letter) in self.rules:
            rest = list(m)
            rest[h[0]] -= h[1]
            rest = tuple(rest)
            res = {}
            for w, c in self.rules[(h, letter)].items():
                add_scaled(res, self.mul(rest, w), c)
        elif letter[0] > h[0] or letter == h:
            mm = list(m)
            mm[letter[0]] += letter[1]
            res = {tuple(mm): one}
        else:
            raise IncompleteRules("no rule for %s followed by %s in %s"
                                  % (self.letter_name(h), self.letter_name(letter), self.name))
        self._mul_letter_cache[key] = res
        return res

    def mul(self, m1, m2):
        """Product of two normal monomials as an element."""
        if not any(m2):
            return {m1: self.field.one}
        if not any(m1):
            return {m2: self.field.one}
        key = (m1, m2)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        rest, letter = self.split_last(m2)
        res = {}
        for m, c in self.mul(m1, rest).items():
            add_scaled(res, self.mul_letter(m, letter), c)
        self._mul_cache[key] = res
        return res

    def multiply(self, a, b):
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                add_scaled(out, self.mul(m1, m2), c1 * c2)
        return out

    def mul_word(self, monos):
        res = dict(self.unit)
        for m in monos:
            res = self.multiply(res, {m: self.field.one})
        return res

    def normal_form(self, word):
        """word: sequence of (generator name or index, integer exponent)."""
        res = dict(self.unit)
        for g, e in word:
            if isinstance(g, str):
                if g in self.aliases:
                    g, sign = self.aliases[g]
                    e = e * sign
                else:
                    if g not in self._gen_index:
                        raise AlgebraError("unknown generator %r" % g)
                    g = self._gen_index[g]
            if e < 0 and self.exponents[g] != "int":
                raise IllegalExponent("negative exponent on %s" % self.generators[g])
            letter = (g, 1 if e > 0 else -1)
            for _ in range(abs(e)):
                nxt = {}
                for m, c in res.items():
                    add_scaled(nxt, self.mul_letter(m, letter), c)
                res = nxt
        return res

    # grading

    def multidegree(self, m):
        dim = len(self.grading[0]) if self.grading else 0
        out = [0] * dim
        for g, e in enumerate(m):
            if e:
                for i, w in enumerate(self.grading[g]):
                    out[i] += e * w
        return tuple(out)

    def filtration(self, m):
        return sum(abs(e) * w for e, w in zip(m, self.filtration_weights))

    def degree(self, m):
        return self.multidegree(m), self.filtration(m)

    def sort_key(self, m):
        return (self.filtration(m), m)

    def enumerate_basis(self, window):
        """All normal monomials in the window, graded-lex on (filtration, exponents)."""
        if isinstance(window, int):
            window = Window(window)
        D = window.max_filtration
        ranges = []
        for g in range(self.ngens):
            w = self.filtration_weights[g]
            if w <= 0:
                raise AlgebraError("enumeration needs positive filtration weights")
            top = D // w
            lo = -top if self.exponents[g] == "int" else 0
            ranges.append(range(lo, top + 1))
        out = []
        for m in itertools.product(*ranges):
            f = self.filtration(m)
            if f > D:
                continue
            if window.exact and f != D:
                continue
            if window.multidegree is not None and self.multidegree(m) != window.multidegree:
                continue
            if self.is_normal(m):
                out.append(m)
        out.sort(key=self.sort_key)
        return out

    # checks

    def check_confluence(self, max_length=4):
        """Associativity of letter words under every bracketing.

        Returns a list of failing words (empty when the rules are confluent
        on words up to max_length).
        """
        letters = []
        for g in range(self.ngens):
            letters.append((g, 1))
            if self.exponents[g] == "int":
                letters.append((g, -1))
        failures = []
        for n in range(3, max_length + 1):
            trees = list(_bracketings(0, n))
            for word in itertools.product(letters, repeat=n):
                monos = [self.letter_mon(l) for l in word]
                results = [self._eval_tree(t, monos) for t in trees]
                if any(r != results[0] for r in results[1:]):
                    failures.append(word)
        return failures

    def _eval_tree(self, tree, monos):
        if isinstance(tree, int):
            return {monos[tree]: self.field.one}
        return self.multiply(self._eval_tree(tree[0], monos), self._eval_tree(tree[1], monos))

    # names and strings

    def letter_name(self, letter):
        g, s = letter
        for alias, (ag, asign) in self.aliases.items():
            if ag == g and asign == s:
                return alias
        return self.generators[g] if s > 0 else self.generators[g] + "^-1"

    def mon_str(self, m):
        parts = []
        for g, e in enumerate(m):
            if e == 1:
                parts.append(self.generators[g])
            elif e:
                parts.append("%s^%d" % (self.generators[g], e))
        return "*".join(parts) if parts else "1"

    def element_str(self, e):
        return format_element(e, self.mon_str, self.field.fmt, self.sort_key)

    def parse_element(self, text):
        return parse_element(text, self)

    def parse_mon(self, text):
        e = self.parse_element(text)
        if len(e) != 1:
            raise AlgebraError("%r is not a single monomial" % text)
        (m, c), = e.items()
        if c != self.field.one:
            raise AlgebraError("%r is not a normal monomial" % text)
        return m

    def gen(self, name):
        return self.parse_mon(name)

    # serialisation

    def to_dict(self):
        rules = []
        for (l1, l2), rhs in self.rules.items():
            lhs = self.letter_name(l1) + "*" + self.letter_name(l2)
            rules.append({"lhs": lhs, "rhs": self.element_str(rhs)})
        return {
            "name": self.name,
            "generators": self.generators,
            "exponents": self.exponents,
            "rules": rules,
            "grading": [list(g) for g in self.grading],
            "filtration": self.filtration_weights,
            "aliases": {k: [self.generators[g], s] for k, (g, s) in self.aliases.items()},
        }


def _bracketings(lo, hi):
    """All binary bracketings of the leaves lo..hi-1."""
    if hi - lo == 1:
        yield lo
        return
    for mid in range(lo + 1, hi):
        for left in _bracketings(lo, mid):
            for right in _bracketings(mid, hi):
                yield (left, right)


# element strings

def _coeff_str(s):
    if s in ("1", "-1"):
        return s
    if re.fullmatch(r"-?(\d+|p(\^\d+)?|\d+\*p(\^\d+)?)", s):
        return s
    return "(" + s + ")"


def format_element(e, mon_str, fmt, sort_key=None):
    if not e:
        return "0"
    keys = sorted(e, key=sort_key) if sort_key else sorted(e)
    parts = []
    for m in keys:
        c = fmt(e[m])
        ms = mon_str(m)
        if ms == "1":
            parts.append(c)
            continue
        cs = _coeff_str(c)
        if cs == "1":
            parts.append(ms)
        elif cs == "-1":
            parts.append("-" + ms)
        else:
            parts.append(cs + "*" + ms)
    out = parts[0]
    for t in parts[1:]:
        out += (" - " + t[1:]) if t.startswith("-") else (" + " + t)
    return out


def _split_terms(text):
    """Split at top-level + and -, keeping the sign with each term."""
    terms = []
    depth = 0
    cur = ""
    prev = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip() and prev not in "^*/":
            terms.append(cur)
            cur = ch
        else:
            cur += ch
        if not ch.isspace():
            prev = ch
    if cur.strip():
        terms.append(cur)
    return terms


def _split_factors(text):
    out = []
    depth = 0
    cur = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "*" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [f.strip() for f in out if f.strip()]


_GENPOW = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^\(?(-?\d+)\)?)?$")
_TOKEN = re.compile(r"\s*(?:(\d+)|([pq])|(.))")


def _tokens(text):
    out = []
    for num, var, op in _TOKEN.findall(text):
        if num:
            out.append(("int", int(num)))
        elif var:
            out.append(("var", var))
        elif op.strip():
            out.append(("op", op))
    return out


class _CoeffParser:
    """Recursive descent over + - * / ^ and parentheses, with atoms p, q and integers.

    q^k and q^(a/b) become powers of p = q^(1/4); other exponents must be integers.
    """

    def __init__(self, text):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def fail(self):
        raise ScalarError("cannot parse coefficient %r" % self.text)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, op=None):
        tok = self.peek()
        if tok[0] is None or (op is not None and tok != ("op", op)):
            self.fail()
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        if self.i != len(self.toks):
            self.fail()
        return v

    def expr(self):
        v = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            if self.take()[1] == "+":
                v = v + self.term()
            else:
                v = v - self.term()
        return v

    def term(self):
        v = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            if self.take()[1] == "*":
                v = v * self.unary()
            else:
                v = v / self.unary()
        return v

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def exponent(self):
        if self.peek() == ("op", "("):
            self.take()
            sign = -1 if self.peek() == ("op", "-") else 1
            if sign < 0:
                self.take()
            kind, num = self.take()
            if kind != "int":
                self.fail()
            den = 1
            if self.peek() == ("op", "/"):
                self.take()
                kind, den = self.take()
                if kind != "int" or den == 0:
                    self.fail()
            self.take(")")
            return sign * num, den
        sign = -1 if self.peek() == ("op", "-") else 1
        if sign < 0:
            self.take()
        kind, num = self.take()
        if kind != "int":
            self.fail()
        return sign * num, 1

    def power(self):
        kind, val = self.peek()
        if kind == "var":
            self.take()
            num, den = self.exponent() if self.peek() == ("op", "^") and self.take() else (1, 1)
            k = 4 * num if val == "q" else num
            if k % den:
                raise ScalarError("%s^(%d/%d) is not an integer power of p" % (val, num, den))
            return p_power(k // den)
        if kind == "int":
            self.take()
            base = parse_scalar(str(val))
        elif (kind, val) == ("op", "("):
            self.take()
            base = self.expr()
            self.take(")")
        else:
            self.fail()
        if self.peek() == ("op", "^"):
            self.take()
            num, den = self.exponent()
            if den != 1:
                raise ScalarError("fractional exponent on %r" % self.text)
            return base ** num
        return base


def parse_coefficient(text):
    """A scalar expression in p and q = p^4, e.g. "q^(-1/2)*(q-q^-1)" or "(1+q^-2)^-1"."""
    return _CoeffParser(text).parse()


def parse_element(text, pres):
    field = pres.field
    text = text.strip()
    out = {}
    if text == "0":
        return out
    for term in _split_terms(text):
        term = term.strip()
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:].strip()
        coeff = field.one * sign
        word = []
        for f in _split_factors(term):
            m = _GENPOW.match(f)
            name = m.group(1) if m else None
            if m and (name in pres._gen_index or name in pres.aliases):
                word.append((name, int(m.group(2)) if m.group(2) else 1))
            else:
                coeff = coeff * field(parse_coefficient(f))
        add_scaled(out, pres.normal_form(word), coeff)
    return out


def _parse_word(text, pres):
    word = []
    for f in _split_factors(text):
        m = _GENPOW.match(f)
        if not m:
            raise AlgebraError("bad word factor %r" % f)
        word.append((m.group(1), int(m.group(2)) if m.group(2) else 1))
    return word


def _resolve_letter(pres, name, e):
    if name in pres.aliases:
        g, s = pres.aliases[name]
        return g, s * (1 if e > 0 else -1)
    return pres._gen_index[name], (1 if e > 0 else -1)


def presentation_from_dict(data, field):
    """Build a Presentation from the JSON-shaped document format."""
    gens = data["generators"]
    index = {g: i for i, g in enumerate(gens)}
    aliases = {}
    for k, v in (data.get("aliases") or {}).items():
        aliases[k] = (index[v[0]], int(v[1]))
    pres = Presentation(data.get("name", "custom"), gens,
                        data.get("exponents", ["nat"] * len(gens)), {},
                        data.get("grading", [[] for _ in gens]),
                        data.get("filtration", [1] * len(gens)), field, aliases)
    parsed = []
    for rule in data.get("rules", []):
        lhs = _parse_word(rule["lhs"], pres)
        if len(lhs) != 2 or any(abs(e) != 1 for _, e in lhs):
            raise AlgebraError("rule left-hand sides must be two letters: %r" % rule["lhs"])
        key = tuple(_resolve_letter(pres, n, e) for n, e in lhs)
        parsed.append((key, rule["rhs"]))
    # right-hand sides are normal words in the basis order, so they can be
    # parsed once every rule key is known
    for key, _ in parsed:
        pres.rules[key] = None
    for key, rhs in parsed:
        pres.rules[key] = _parse_rhs(rhs, pres)
    pres._mul_letter_cache.clear()
    pres._mul_cache.clear()
    return pres


def _parse_rhs(text, pres):
    field = pres.field
    out = {}
    if text.strip() == "0":
        return out
    for term in _split_terms(text.strip()):
        term = term.strip()
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:].strip()
        coeff = field.one * sign
        m = [0] * pres.ngens
        for f in _split_factors(term):
            g = _GENPOW.match(f)
            name = g.group(1) if g else None
            if g and (name in pres._gen_index or name in pres.aliases):
                gi, s = _resolve_letter(pres, name, 1)
                e = int(g.group(2)) if g.group(2) else 1
                m[gi] += s * e
            else:
                coeff = coeff * field(parse_coefficient(f))
        add_term(out, tuple(m), coeff)
    return out


def words_up_to(pres, length):
    letters = []
    for g in range(pres.ngens):
        letters.append((g, 1))
        if pres.exponents[g] == "int":
            letters.append((g, -1))
    for n in range(length + 1):
        yield from itertools.product(letters, repeat=n)
