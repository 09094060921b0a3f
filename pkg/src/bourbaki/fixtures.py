"""Named test posets shipped with the package."""

from .poset import close_covers

CHAIN3 = close_covers(["a", "b", "c"], [("a", "b"), ("b", "c")], name="CHAIN3")
DIAMOND = close_covers(
    ["bot", "l", "r", "top"],
    [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
    name="DIAMOND",
)
VEE = close_covers(["bot", "l", "r"], [("bot", "l"), ("bot", "r")], name="VEE")
ANTICHAIN2 = close_covers(["x", "y"], [], name="ANTICHAIN2")

POSETS = {p.name: p for p in (CHAIN3, DIAMOND, VEE, ANTICHAIN2)}
