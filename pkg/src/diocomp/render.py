"""Text and LaTeX for the (star), (dagger), f_{A,B,C} and main displays.

Output is a pure function of (target, style, constants).  Constants left out
render as their letters; huge ones use the index grammar, never decimals.
"""

from __future__ import annotations

import enum
from typing import Mapping, Optional

from .errors import RenderError
from .index import Index, render_index


class Target(enum.Enum):
    STAR = "star"
    DAGGER = "dagger"
    FBODY = "f"
    MAIN = "main"


class Style(enum.Enum):
    PLAIN = "plain"
    LATEX = "latex"


_LETTERS = {
    Target.STAR: ("D", "E", "F"),
    Target.DAGGER: ("A", "B", "C"),
    Target.FBODY: ("A", "B", "C"),
    Target.MAIN: ("A", "B", "C"),
}


def latex_index(k: Index) -> str:
    """``9+2^{i}\\cdot 3^{j}`` nesting, from the canonical plain rendering."""
    s = render_index(k)
    return s.replace("(", "{").replace(")", "}").replace("}*3^{", "}\\cdot 3^{")


def _constants(target: Target, style: Style, constants: Optional[Mapping[str, Index]]):
    letters = _LETTERS[target]
    if constants is None:
        return dict(zip(letters, letters))
    extra = set(constants) - set(letters)
    if extra:
        raise RenderError(f"{target.value} takes constants {', '.join(letters)}, not {sorted(extra)}")
    missing = [c for c in letters if c not in constants]
    if missing:
        raise RenderError(f"missing constants {', '.join(missing)} for {target.value}")
    fmt = latex_index if style is Style.LATEX else render_index
    return {c: fmt(constants[c]) for c in letters}


def _prefix(style: Style, a: str) -> str:
    if style is Style.LATEX:
        return (
            "\\sup_{x_0,x_1 \\in \\mathbb{R}} \\inf_{x_2 \\in \\mathbb{R}} "
            "\\sup_{x_3 \\in \\mathbb{R}} \\inf_{x_4 \\in \\mathbb{R}} "
            "\\sup_{m \\in \\mathbb{N}} "
            f"\\inf_{{n_0,\\dots,n_{{{a}}} \\in \\mathbb{{N}}}}"
        )
    return (
        "sup_{x_0,x_1 in R} inf_{x_2 in R} sup_{x_3 in R} inf_{x_4 in R} "
        f"sup_{{m in N}} inf_{{n_0,...,n_{{{a}}} in N}}"
    )


def _bracket(style: Style, c: Mapping[str, str], squared: bool) -> str:
    b, cc = c["B"], c["C"]
    if style is Style.LATEX:
        xk = "x_k^2" if squared else "x_k"
        return "\n".join([
            "\\left[",
            "  \\begin{matrix*}[l]",
            "    \\phantom{+}(n_0 - 2)^2 + (n_1 - m)^2 \\\\",
            f"    + n_2 + (n_{{{b}}} - n_{{{cc}}})^2 \\\\",
            f"    + n_3 \\sum_{{k=0}}^4 ( {xk} - \\frac{{n_{{k+5}}}}{{1+n_4}} + n_4)^2 \\\\",
            f"    + \\sum_{{i,j = 0}}^{{{b}}} (n_{{9+2^i3^j}} - n_i^{{n_j}})^2",
            "  \\end{matrix*}",
            "\\right]",
        ])
    xk = "x_k^2" if squared else "x_k"
    return "\n".join([
        "[",
        "    (n_0 - 2)^2 + (n_1 - m)^2",
        f"  + n_2 + (n_{{{b}}} - n_{{{cc}}})^2",
        f"  + n_3 * sum_{{k=0}}^{{4}} ({xk} - n_{{k+5}}/(1+n_4) + n_4)^2",
        f"  + sum_{{i,j=0}}^{{{b}}} (n_{{9+2^i*3^j}} - n_i^(n_j))^2",
        "]",
    ])


def _star(style: Style, c: Mapping[str, str]) -> str:
    d, e, f = c["D"], c["E"], c["F"]
    if style is Style.LATEX:
        return "\n".join([
            f"\\inf_{{n_0,\\dots,n_{{{d}}} \\in \\mathbb{{N}}}}",
            "\\left[",
            "  (n_0-2)^2",
            f"  + (n_{{{e}}} - n_{{{f}}})^2",
            f"  + \\sum_{{i,j = 0}}^{{{e}}} (n_{{2^i3^j}} - n_i^{{n_j}})^2",
            "\\right]",
        ])
    return "\n".join([
        f"inf_{{n_0,...,n_{{{d}}} in N}} [",
        "    (n_0 - 2)^2",
        f"  + (n_{{{e}}} - n_{{{f}}})^2",
        f"  + sum_{{i,j=0}}^{{{e}}} (n_{{2^i*3^j}} - n_i^(n_j))^2",
        "]",
    ])


def render(target, style="plain", constants: Optional[Mapping[str, Index]] = None) -> str:
    """Render a display; the result always ends with a newline."""
    target = Target(target)
    style = Style(style)
    c = _constants(target, style, constants)
    latex = style is Style.LATEX
    if target is Target.STAR:
        body = _star(style, c)
    elif target is Target.FBODY:
        if latex:
            head = f"f_{{{c['A']},{c['B']},{c['C']}}}(x_0,\\dots,x_4,m,n_0,\\dots,n_{{{c['A']}}}) ="
        else:
            head = f"f_{{{c['A']},{c['B']},{c['C']}}}(x_0,...,x_4,m,n_0,...,n_{{{c['A']}}}) ="
        body = head + " " + _bracket(style, c, False)
    else:
        x0 = "x^2_0" if latex else "x_0^2"
        body = f"{_prefix(style, c['A'])} {x0} " + _bracket(style, c, target is Target.MAIN)
        if target is Target.MAIN:
            body = "r = " + body
    return body + "\n"


def program_constants(prog) -> dict:
    """{"A", "B", "C"} of a CompiledEquation or CeSetProgram."""
    eq = getattr(prog, "compiled", prog)
    return {"A": eq.A, "B": eq.B, "C": eq.C}
