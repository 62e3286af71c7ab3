"""Reference rows for the fibration tables.

Used only to diff freshly computed rows; nothing in the computation reads
this module.  Columns: R_N, R_phi, MW torsion, MW rank, R_phi_prime.
"""

from __future__ import annotations

_TABLE_CHAR2 = """\
4A5 + D4|4A5|3,6|0|0
6D4|5D4|2,2,2,2|0|0
2A7 + 2D5|2A7 + D5|8|1|A1
2A9 + D6|2A1 + 2A9|10|0|2A1
4D6|2A1 + 3D6|2,2,2|0|2A1
A11 + D7 + E6|A11 + D7|4|2|A2
A11 + D7 + E6|A3 + A11 + E6|6|0|3A1
4E6|3E6|3|2|A2
3D8|D4 + 2D8|2,2|0|4A1
A15 + D9|A15 + D5|4|0|5A1
A17 + E7|3A1 + A17|6|0|A3
D10 + 2E7|3A1 + D10 + E7|2,2|0|A3
D10 + 2E7|D6 + 2E7|2|0|6A1
2D12|D8 + D12|2|0|8A1
D16 + E8|D4 + D16|2|0|D4
D16 + E8|D12 + E8|1|0|12A1
3E8|D4 + 2E8|1|0|D4
D24|D20|1|0|20A1
"""

_TABLE_CHAR3 = """\
12A2|10A2|3,3,3,3|0|0
8A3|6A3|4,4|2|0
6A4|2A1 + 4A4|5|2|0
6D4|4D4|2,2|4|0
4A5 + D4|A2 + 3A5|3|3|0
4A5 + D4|3A5 + D4|2,6|1|A1
4A5 + D4|2A2 + 2A5 + D4|2|2|0
4A6|3A6|7|2|A1
4A6|2A3 + 2A6|1|2|0
2A7 + 2D5|4A1 + 2A7|2,4|2|0
2A7 + 2D5|A1 + A7 + 2D5|4|2|A1
2A7 + 2D5|2A1 + A4 + A7 + D5|2|2|0
2A7 + 2D5|2A4 + 2D5|1|2|0
3A8|A2 + 2A8|3|2|A1
3A8|2A5 + A8|1|2|0
4D6|3D6|2,2|2|2A1
4D6|2A3 + 2D6|2,2|2|0
2A9 + D6|2A9|5|2|2A1
2A9 + D6|A3 + A9 + D6|2|2|A1
2A9 + D6|A3 + A6 + A9|1|2|0
2A9 + D6|2A6 + D6|1|2|0
4E6|A2 + 3E6|3|0|A2
4E6|4A2 + 2E6|3,3|0|0
A11 + D7 + E6|A2 + A11 + D7|4|0|A2
A11 + D7 + E6|A11 + E6|3|3|2A1
A11 + D7 + E6|2A2 + A11 + D4|6|1|0
A11 + D7 + E6|A5 + D7 + E6|1|2|A1
A11 + D7 + E6|2A2 + A8 + D7|1|1|0
A11 + D7 + E6|A8 + D4 + E6|1|2|0
2A12|A6 + A12|1|2|A1
2A12|2A9|1|2|0
3D8|2A1 + 2D8|2,2|2|2A1
3D8|2D5 + D8|2|2|0
A15 + D9|A3 + A15|4|2|2A1
A15 + D9|A9 + D9|1|2|A1
A15 + D9|A12 + D6|1|2|0
A17 + E7|A2 + A17|3|1|A1 + A2
A17 + E7|A11 + E7|1|2|A1
A17 + E7|A5 + A14|1|1|0
D10 + 2E7|A2 + D10 + E7|2|1|A1 + A2
D10 + 2E7|2A5 + D10|2,2|0|0
D10 + 2E7|D4 + 2E7|2|2|2A1
D10 + 2E7|A5 + D7 + E7|2|1|0
2D12|D6 + D12|2|2|2A1
2D12|2D9|1|2|0
3E8|2A2 + 2E8|1|0|2A2
3E8|2E6 + E8|1|0|0
D16 + E8|2A2 + D16|2|0|2A2
D16 + E8|D10 + E8|1|2|2A1
D16 + E8|D13 + E6|1|1|0
A24|A18|1|2|A1
D24|D18|1|2|2A1
"""


def _parse(text: str) -> list[tuple]:
    rows = []
    for line in text.strip().splitlines():
        rn, rphi, tor, rank, rpp = line.split("|")
        rows.append((rn, rphi, tuple(int(x) for x in tor.split(",")), int(rank), rpp))
    return rows


GOLDEN = {2: _parse(_TABLE_CHAR2), 3: _parse(_TABLE_CHAR3)}
