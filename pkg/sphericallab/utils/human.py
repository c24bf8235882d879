import functools
import typing

SIZE_TABLE = [
    ("", 1000 ** 0),
    ("k", 1000 ** 1),
    ("m", 1000 ** 2),
    ("g", 1000 ** 3),
    ("t", 1000 ** 4),
]

SIZE_UNITS = dict(SIZE_TABLE[1:])


def pretty_count(n: int) -> str:
    """
    Render a work-unit count compactly, e.g. 1.5m for 1500000.
    """
    for bottom, top in zip(SIZE_TABLE, SIZE_TABLE[1:]):
        if n < top[1]:
            x = round(n / bottom[1], 2)
            if x == int(x):
                x = int(x)
            return str(x) + bottom[0]
    x = round(n / SIZE_TABLE[-1][1], 2)
    return "{}{}".format(int(x) if x == int(x) else x, SIZE_TABLE[-1][0])


@functools.lru_cache()
def parse_count(s: typing.Optional[str]) -> typing.Optional[int]:
    """
    Parse a count with an optional k/m/g/t suffix (powers of 1000), or a
    power of two written as 2^k. Invalid values raise a ValueError.
    For added convenience, passing `None` returns `None`.
    """
    if s is None:
        return None
    s = s.strip().lower()
    try:
        return int(s)
    except ValueError:
        pass
    if s.startswith("2^"):
        try:
            return 2 ** int(s[2:])
        except ValueError:
            raise ValueError("Invalid count specification.")
    for suffix, mult in SIZE_UNITS.items():
        if s.endswith(suffix):
            try:
                return int(float(s[:-1]) * mult)
            except ValueError:
                break
    raise ValueError("Invalid count specification.")


def pretty_duration(secs: typing.Optional[float]) -> str:
    formatters = [
        (100, "{:.0f}s"),
        (10, "{:2.1f}s"),
        (1, "{:1.2f}s"),
    ]
    if secs is None:
        return ""

    for limit, formatter in formatters:
        if secs >= limit:
            return formatter.format(secs)
    # less than 1 sec
    return "{:.0f}ms".format(secs * 1000)
