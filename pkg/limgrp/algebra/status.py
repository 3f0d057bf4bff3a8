"""
Status vocabulary shared by every checker

Ordered from strongest to weakest so that the status of a composite check
is the weakest status of its parts.
"""

from enum import Enum


class Status(str, Enum):
    VERIFIED = "verified"
    SAMPLED = "sampled"
    ASSERTED = "asserted"
    UNVERIFIABLE = "unverifiable"
    REFUTED = "refuted"
    FAILED = "failed"

    def __str__(self):
        return self.value

    @property
    def rank(self):
        return _ORDER.index(self)

    @property
    def is_failure(self):
        return self in (Status.FAILED, Status.REFUTED)

    @property
    def is_degraded(self):
        return self in (Status.SAMPLED, Status.ASSERTED, Status.UNVERIFIABLE)


_ORDER = [
    Status.VERIFIED,
    Status.SAMPLED,
    Status.ASSERTED,
    Status.UNVERIFIABLE,
    Status.REFUTED,
    Status.FAILED,
]


def weakest(statuses, default=Status.VERIFIED):
    """Weakest status of an iterable
    Example: weakest([verified, sampled]) -> sampled
    """
    result = default
    for status in statuses:
        if status.rank > result.rank:
            result = status
    return result
