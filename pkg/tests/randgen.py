"""Seeded generator of small random API units, as source text."""

from __future__ import annotations

import random

KINDS = ("HashSet", "LinkedHashSet", "TreeSet")


class UnitGen:
    def __init__(self, seed: int, max_colls: int = 2, max_values: int = 3,
                 max_stmts: int = 3, loops: bool = True):
        self.rng = random.Random(seed)
        self.max_stmts = max_stmts
        self.loops = loops
        n_colls = self.rng.randint(1, max_colls)
        self.colls = [f"c{k}" for k in range(n_colls)]
        self.kinds = {c: self.rng.choice(KINDS) for c in self.colls}
        budget = max_values - (1 if "TreeSet" in self.kinds.values() else 0)
        self.n_params = self.rng.randint(0, budget)

    def params(self):
        return [f"p{k}" for k in range(self.n_params)]

    def condition(self, params, depth=0):
        r = self.rng.random()
        if depth < 1 and r < 0.2:
            return f"!({self.condition(params, depth + 1)})"
        if depth < 1 and r < 0.35:
            return f"{self.condition(params, depth + 1)} && {self.condition(params, depth + 1)}"
        c = self.rng.choice(self.colls)
        atoms = [f"{c}.isEmpty()"]
        if params:
            v = self.rng.choice(params)
            atoms.append(f"{c}.contains({v})")
        if len(params) >= 2:
            a, b = self.rng.sample(params, 2)
            atoms += [f"{a} == {b}", f"{a} != {b}"]
        return self.rng.choice(atoms)

    def op(self, params, pad):
        c = self.rng.choice(self.colls)
        names = ["clear"] + (["add", "remove"] * 2 if params else [])
        name = self.rng.choice(names)
        arg = self.rng.choice(params) if name != "clear" else ""
        return [f"{pad}{c}.{name}({arg});"]

    def block(self, params, depth, pad):
        lines = []
        for _ in range(self.rng.randint(1, self.max_stmts)):
            r = self.rng.random()
            if depth < 2 and r < 0.2:
                lines.append(f"{pad}if ({self.condition(params)}) {{")
                lines += self.block(params, depth + 1, pad + "    ")
                if self.rng.random() < 0.5:
                    lines.append(f"{pad}}} else {{")
                    lines += self.block(params, depth + 1, pad + "    ")
                lines.append(f"{pad}}}")
            elif self.loops and depth < 2 and r < 0.3:
                lines.append(f"{pad}while ({self.condition(params)}) {{")
                lines += self.block(params, depth + 1, pad + "    ")
                lines.append(f"{pad}}}")
            else:
                lines += self.op(params, pad)
        return lines

    def method(self, name, single_op=False):
        params = self.params()
        head = ", ".join(f"String {p}" for p in params)
        body = self.op(params, "        ") if single_op else self.block(params, 0, "        ")
        return [f"    public void {name}({head}) {{", *body, "    }"]

    def source(self, n_methods: int = 2, single_op: bool = False) -> str:
        lines = ["class Gen {"]
        for c in self.colls:
            lines.append(f"    private Set<String> {c} = new {self.kinds[c]}<>();")
        for k in range(n_methods):
            lines.append("")
            lines += self.method(f"m{k}", single_op)
        lines.append("}")
        return "\n".join(lines) + "\n"
