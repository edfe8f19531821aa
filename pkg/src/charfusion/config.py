"""Default size caps.  Every capped routine also takes an explicit ``cap``."""

ENUMERATION_CAP = 10**6
COSET_TABLE_CAP = 10**5
SUBGROUP_CAP = 10**5
CHARACTER_COUNT_CAP = 10**5
LIMIT_TUPLE_CAP = 10**7
SYLOW_COUNT_CAP = 10**4
ISOMORPHISM_ORDER_CAP = 512

# Groups C tried for the Q8*C item of the 2-group list.
THOMAS_ITEM4_C = ("Z4",)
