"""Published near misses |r_p| < 100 over (2^34, 2^40)."""
from __future__ import annotations

TABLE1_FROM_EXP = 34
TABLE1_TO_EXP = 40
TABLE1_THRESHOLD = 100

TABLE1: tuple[tuple[int, int], ...] = (
    (22370028691, -55),
    (34212035633, 47),
    (35420262113, -24),
    (39541338091, -1),
    (71848806989, -87),
    (94844067751, -59),
    (102281886901, 19),
    (141853427273, 95),
    (153736627747, 24),
    (203109046969, -73),
    (252164235031, 84),
    (296599719739, -67),
    (315631019399, 72),
    (342077311241, -85),
    (348036477379, -77),
    (425430768359, 9),
    (450798203041, 52),
    (541389125113, -9),
    (576365852729, 5),
    (581743725197, 28),
    (668487297869, -92),
    (740405032753, -24),
    (817880148803, -46),
    (885831128921, -35),
)
