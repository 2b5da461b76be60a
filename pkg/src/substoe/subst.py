"""Primitive substitutions and their exact factor languages.

The language machinery never expands full images of letters.  It first
computes the exact two-block language by a closure argument, then reads
every longer factor out of images of two-block words whose runs have been
clamped to the window size.  Clamping preserves all factors up to the
window, so the enumeration is exact while huge rule words stay cheap.
"""

from dataclasses import dataclass

from .errors import CapabilityError, DomainError, InternalError, SeedError
from .matrix import ExactMatrix, primitivity_exponent
from .words import RunWord, word_of

PRIVATE_BASE = 0xE000
LENGTH_GUARD = 2_000_000
POWER_ITER_CAP = 10_000


def _apply_rules(rules, word, clamp=None):
    parts = []
    for letter, count in word.runs:
        if letter not in rules:
            raise DomainError("letter %r has no rule" % letter)
        image = rules[letter]
        copies = min(count, clamp) if clamp is not None else count
        parts.extend(image.repeat(copies).runs)
    out = RunWord(parts)
    if clamp is not None:
        out = out.clamp(clamp)
    if out.length > LENGTH_GUARD:
        raise CapabilityError("image exceeds the expansion budget")
    return out


@dataclass(frozen=True)
class FactorLanguage:
    """All factors of one length, plus the exact two-block language."""
    n: int
    words: frozenset
    two_blocks: frozenset


class Substitution:
    """A map sending each alphabet letter to a nonempty word."""

    def __init__(self, rules, alphabet=None):
        if not rules:
            raise DomainError("substitution needs at least one rule")
        if alphabet is None:
            alphabet = tuple(rules)
        alphabet = tuple(alphabet)
        seen = set()
        for letter in alphabet:
            if not isinstance(letter, str) or not letter:
                raise DomainError("letters must be nonempty strings")
            if "." in letter or any(ch.isspace() for ch in letter):
                raise DomainError("letters may not contain dots or spaces")
            if letter in seen:
                raise DomainError("duplicate letter %r" % letter)
            seen.add(letter)
        fixed = {}
        for letter in alphabet:
            if letter not in rules:
                raise DomainError("missing rule for %r" % letter)
            image = word_of(rules[letter])
            if image.is_empty:
                raise DomainError("rule for %r is empty" % letter)
            if not image.letters_used() <= seen:
                raise DomainError("rule for %r uses unknown letters" % letter)
            fixed[letter] = image
        if set(rules) != seen:
            raise DomainError("rules mention letters outside the alphabet")
        self.alphabet = alphabet
        self.rules = fixed
        self._index = {l: i for i, l in enumerate(alphabet)}
        self._primitivity = None
        self._primitivity_known = False

    @property
    def size(self):
        return len(self.alphabet)

    def incidence_matrix(self):
        """Column j counts the letters inside the rule of letter j."""
        cols = []
        for letter in self.alphabet:
            counts = self.rules[letter].letter_counts()
            cols.append([counts.get(l, 0) for l in self.alphabet])
        return ExactMatrix.from_columns(cols)

    def primitivity(self):
        if not self._primitivity_known:
            self._primitivity = primitivity_exponent(self.incidence_matrix())
            self._primitivity_known = True
        return self._primitivity

    def is_primitive(self):
        return self.primitivity() is not None

    def apply(self, word, clamp=None):
        return _apply_rules(self.rules, word_of(word), clamp)

    def compose(self, other):
        """Substitution sending each letter to self(other(letter))."""
        if self.alphabet != other.alphabet:
            raise DomainError("compose needs a shared alphabet")
        rules = {l: self.apply(other.rules[l]) for l in self.alphabet}
        return Substitution(rules, self.alphabet)

    def power(self, p):
        if p < 1:
            raise DomainError("power must be positive")
        out = self
        for _ in range(p - 1):
            out = self.compose(out)
        return out

    def first_letter_map(self):
        return {l: self.rules[l].first for l in self.alphabet}

    def last_letter_map(self):
        return {l: self.rules[l].last for l in self.alphabet}

    def properness_witness(self):
        """Smallest m with constant first and last letters of all m-step
        images, as (m, first, last); None when no such m exists.

        Only s iterations matter: each map permutes its eventual image, so
        a collapse to a single letter happens within s steps or never.
        """
        fmap = self.first_letter_map()
        gmap = self.last_letter_map()
        fcur = {l: l for l in self.alphabet}
        gcur = dict(fcur)
        for m in range(1, self.size + 1):
            fcur = {l: fmap[fcur[l]] for l in self.alphabet}
            gcur = {l: gmap[gcur[l]] for l in self.alphabet}
            firsts = set(fcur.values())
            lasts = set(gcur.values())
            if len(firsts) == 1 and len(lasts) == 1:
                return (m, firsts.pop(), lasts.pop())
        return None

    def find_fixed_point_seed(self):
        """Pair (letter, p) so that the p-th power fixes letter in front.

        Smallest power first, alphabet order inside; follows the
        first-letter map, whose orbits always cycle.
        """
        fmap = self.first_letter_map()
        cur = {l: l for l in self.alphabet}
        for p in range(1, self.size + 1):
            cur = {l: fmap[cur[l]] for l in self.alphabet}
            for letter in self.alphabet:
                if cur[letter] == letter:
                    return (letter, p)
        raise InternalError("first-letter map has no periodic letter")

    def _image_edge(self, word, n, side):
        # one substitution step, keeping only n letters at the chosen edge
        parts = []
        size = 0
        runs = word.runs if side == "right" else reversed(word.runs)
        for letter, count in runs:
            image = self.rules[letter]
            while count > 0 and size < n:
                parts.append(image.runs)
                size += image.length
                count -= 1
            if size >= n:
                break
        if side == "right":
            flat = [r for chunk in parts for r in chunk]
            return RunWord(flat).prefix(n)
        flat = [r for chunk in reversed(parts) for r in chunk]
        return RunWord(flat).suffix(n)

    def _edge_iterate(self, letter, n, side):
        word = RunWord(((letter, 1),))
        for _ in range(n + 5):
            grown = self._image_edge(word, n, side)
            if grown == word:
                raise SeedError("seed letter %r does not grow" % letter)
            word = grown
            if word.length >= n:
                return word
        raise InternalError("edge iteration failed to settle")

    def fixed_point_prefix(self, seed, n):
        """Initial n letters of the fixed point selected by the seed.

        One-sided seeds are a single letter l with rule(l) starting at l.
        Two-sided seeds are written "r.l" and also need rule(r) to end at
        r and the pair rl to be admissible; the result is then a dict with
        the n letters on each side of the origin.
        """
        if n < 1:
            raise DomainError("prefix length must be positive")
        if not isinstance(seed, str) or not seed:
            raise SeedError("seed must be a nonempty string")
        if "." in seed:
            left, _, right = seed.partition(".")
            if left not in self._index or right not in self._index:
                raise SeedError("unknown seed letters in %r" % seed)
            if self.rules[left].last != left:
                raise SeedError("rule of %r does not end with it" % left)
            if self.rules[right].first != right:
                raise SeedError("rule of %r does not start with it" % right)
            if (left, right) not in self.factor_language(2).two_blocks:
                raise SeedError("seed pair %s%s is not admissible" % (left, right))
            return {
                "left": self._edge_iterate(left, n, "left").expand(),
                "right": self._edge_iterate(right, n, "right").expand(),
            }
        if seed not in self._index:
            raise SeedError("unknown seed letter %r" % seed)
        if self.rules[seed].first != seed:
            raise SeedError("rule of %r does not start with it" % seed)
        return self._edge_iterate(seed, n, "right").expand()

    # -- factor language engine ------------------------------------------

    def _encoding(self):
        if all(len(l) == 1 for l in self.alphabet):
            return {l: l for l in self.alphabet}
        return {l: chr(PRIVATE_BASE + i) for i, l in enumerate(self.alphabet)}

    def _encoded_rules(self, enc):
        out = {}
        for letter in self.alphabet:
            out[enc[letter]] = RunWord(
                (enc[l], c) for l, c in self.rules[letter].runs)
        return out

    def _growth_power(self, target):
        """Least m with every m-step image at least target letters long."""
        if target <= 1:
            return 0
        a = self.incidence_matrix()
        s = self.size
        rows = [[int(a.at(i, j)) for j in range(s)] for i in range(s)]
        v = [self.rules[l].length for l in self.alphabet]
        m = 1
        while min(v) < target:
            nxt = [sum(rows[i][j] * v[i] for i in range(s)) for j in range(s)]
            if nxt == v:
                raise DomainError("substitution images do not grow")
            v = nxt
            m += 1
            if m > POWER_ITER_CAP:
                raise CapabilityError("growth power search exceeded its cap")
        return m

    def _two_blocks_encoded(self, rules):
        """Exact two-block language over the encoded alphabet.

        Seeds with all adjacent pairs inside images deep enough that every
        letter image has length two, then closes under the pair map
        (b, c) -> pairs of rule(b), rule(c) plus their junction.  Every
        added pair stays admissible and the closure reaches all of them.
        """
        letters = list(rules)
        m0 = max(self._growth_power(2), 1)
        fmap = {ch: rules[ch].first for ch in letters}
        gmap = {ch: rules[ch].last for ch in letters}
        fpow = dict(fmap)
        gpow = dict(gmap)
        tsets = {ch: rules[ch].two_factors() for ch in letters}
        for _ in range(m0 - 1):
            nxt = {}
            for ch in letters:
                rule = rules[ch]
                pairs = set()
                for d in rule.letters_used():
                    pairs |= tsets[d]
                for b, c in rule.two_factors():
                    pairs.add((gpow[b], fpow[c]))
                nxt[ch] = pairs
            tsets = nxt
            fpow = {ch: fmap[fpow[ch]] for ch in letters}
            gpow = {ch: gmap[gpow[ch]] for ch in letters}
        work = set()
        for ch in letters:
            work |= tsets[ch]
        while True:
            grown = set(work)
            for b, c in work:
                grown |= rules[b].two_factors()
                grown |= rules[c].two_factors()
                grown.add((rules[b].last, rules[c].first))
            if grown == work:
                return work
            work = grown

    def _window_words(self, n):
        """Encoded n-factor strings of the substitution language."""
        if n < 1:
            raise DomainError("factor length must be positive")
        if not self.is_primitive():
            raise DomainError("factor language needs a primitive substitution")
        enc = self._encoding()
        rules = self._encoded_rules(enc)
        blocks = self._two_blocks_encoded(rules)
        m = self._growth_power(n)
        images = {}
        for ch in {b for b, _ in blocks} | {c for _, c in blocks}:
            img = RunWord(((ch, 1),))
            for _ in range(m):
                img = _apply_rules(rules, img, clamp=n)
            images[ch] = img.as_compact()
        out = set()
        for b, c in blocks:
            text = images[b] + images[c]
            for i in range(len(text) - n + 1):
                out.add(text[i:i + n])
        return out, blocks, enc

    def factor_language(self, n):
        words, blocks, enc = self._window_words(n)
        dec = {v: k for k, v in enc.items()}
        return FactorLanguage(
            n=n,
            words=frozenset(tuple(dec[ch] for ch in w) for w in words),
            two_blocks=frozenset((dec[b], dec[c]) for b, c in blocks))

    def complexity(self, n):
        return len(self._window_words(n)[0])

    def complexity_profile(self, n_max, validate=True):
        """Tuple of factor counts p(1), ..., p(n_max).

        Every factor extends to the right inside the language, so the
        j-factors are exactly the j-prefixes of the n_max-factors; the
        counts fall out of the sorted list and its common-prefix lengths.
        """
        if n_max < 1:
            raise DomainError("profile needs n_max >= 1")
        words = sorted(self._window_words(n_max)[0])
        hist = [0] * (n_max + 1)
        for prev, cur in zip(words, words[1:]):
            lcp = 0
            while lcp < n_max and prev[lcp] == cur[lcp]:
                lcp += 1
            hist[min(lcp, n_max)] += 1
        profile = []
        below = 0
        for j in range(1, n_max + 1):
            below += hist[j - 1]
            profile.append(1 + below)
        if validate:
            for k in sorted({1, min(3, n_max)}):
                if profile[k - 1] != self.complexity(k):
                    raise InternalError("profile disagrees with direct count")
        return tuple(profile)

    def aperiodicity_scan(self, n_cap):
        """Check p(n) > n on the range; a failure certifies periodicity."""
        profile = self.complexity_profile(n_cap, validate=False)
        for n, p in enumerate(profile, start=1):
            if p <= n:
                return {"aperiodic": False, "violation_at": n, "count": p}
        return {"aperiodic": True, "n_cap": n_cap}

    def __repr__(self):
        inner = ", ".join(
            "%s->%s" % (l, self.rules[l].as_compact() or "<long>")
            for l in self.alphabet[:4])
        if self.size > 4:
            inner += ", ..."
        return "Substitution(%s)" % inner


def linear_bound_estimate(subst, n_probe):
    """Smallest observed C with p(n) <= C*n across the probed range."""
    profile = subst.complexity_profile(n_probe, validate=False)
    best = 1
    for n, p in enumerate(profile, start=1):
        best = max(best, -(-p // n))
    return best
