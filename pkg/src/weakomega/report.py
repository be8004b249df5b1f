from dataclasses import dataclass, field


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str
    witness: tuple = ()

    def __str__(self):
        if not self.witness:
            return "{}: {}".format(self.kind, self.detail)
        return "{}: {} [{}]".format(
            self.kind, self.detail, ", ".join(map(str, self.witness)))


@dataclass
class Report:
    """Outcome of a validator: ok iff no violations were recorded.

    ``bound`` is the term-size bound used by checks that quantify over an
    infinite set of cells; ``None`` means the check was exhaustive.
    """
    violations: list = field(default_factory=list)
    bound: int = None
    notes: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def add(self, kind, detail, *witness):
        self.violations.append(Violation(kind, detail, tuple(witness)))

    def extend(self, other, prefix=""):
        for v in other.violations:
            kind = prefix + v.kind if prefix else v.kind
            self.violations.append(Violation(kind, v.detail, v.witness))
        self.notes.extend(other.notes)
        if other.bound is not None:
            self.bound = other.bound if self.bound is None else max(self.bound, other.bound)
        return self

    def kinds(self):
        return sorted({v.kind for v in self.violations})

    def __bool__(self):
        return self.ok

    def lines(self):
        out = ["VERDICT " + ("ok" if self.ok else "fail")]
        out += ["WITNESS " + str(v) for v in self.violations]
        out += ["NOTE " + n for n in self.notes]
        if self.bound is not None:
            out.append("BOUND {}".format(self.bound))
        return out
