"""Published token sequences used as fixtures."""

from locallex.lexing import Token


def seq(text):
    """Parse 'a/id -/minus' into a token tuple; 'ε' denotes empty chars."""
    out = []
    for part in text.split():
        chars, _, terminal = part.rpartition("/")
        out.append(Token(terminal, "" if chars == "ε" else chars))
    return tuple(out)


H_NONE_LEXINGS = [seq(s) for s in [
    "a/id -/minus b/id +/plus c/id",
    "a/id -/minus b/id +/plus c/symbol",
    "a/id -/minus b/symbol +/plus c/id",
    "a/id -/minus b/symbol +/plus c/symbol",
    "a/id -b/symbol +/plus c/id",
    "a/id -b/symbol +/plus c/symbol",
    "a-b/symbol +/plus c/id",
    "a-b/symbol +/plus c/symbol",
]]

H_ORDER_LEXINGS = {seq("a/id -/minus b/id +/plus c/id")}
H_LONGEST_LEXINGS = {seq("a-b/symbol +/plus c/id"), seq("a-b/symbol +/plus c/symbol")}
H_LONGEST_ORDER_LEXINGS = {seq("a-b/symbol +/plus c/id")}
LEXER_HACK_LEXINGS = {seq("(/left a/id )/right */asterisk b/id"),
       seq("(/left a/typeid )/right */asterisk b/id")}
RECOVERY_INPUT = "2(a*+))+(1"
RECOVERY_PATH = seq("2/num (/left a/id */mul ε/e-atom +/plus ε/e-atom )/right "
               ")/e-superfluous +/plus (/left 1/num ε/e-right")


def pumped(cap):
    """The first cap+1 sequences for "aa" under ε-pumping."""
    return {seq("aa/t1" + " ε/t1" * n) for n in range(cap + 1)}
