class WatchmanError(Exception):
    """Base class for all solver errors."""


class InvalidPolygon(WatchmanError):
    pass


class PointOutside(WatchmanError):
    pass


class SegmentOutside(WatchmanError):
    pass


class NotOrthogonal(WatchmanError):
    pass


class ResourceCap(WatchmanError):
    """Raised when a search would exceed its configured state budget."""


class Infeasible(WatchmanError):
    pass


class QuotaOutOfRange(WatchmanError):
    pass


class TooLarge(WatchmanError):
    pass
