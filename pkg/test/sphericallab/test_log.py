import io

import pytest

from sphericallab import ctx
from sphericallab import exceptions
from sphericallab import log
from sphericallab.addons import termlog
from sphericallab.test import tlab


def test_logentry():
    e = log.LogEntry("foo", "info")
    assert repr(e) == "LogEntry(foo, info)"
    assert e == log.LogEntry("foo", "info")
    assert e != log.LogEntry("foo", "warn")
    assert e != "foo"


def test_log_without_master():
    log.Log().warn("dropped")


def test_dispatch():
    with tlab.context() as tctx:
        ctx.log.debug("one")
        ctx.log.info("two")
        ctx.log.alert("three")
        ctx.log.warn("four")
        ctx.log.error("five")
        ctx.log("six")
        assert [e.level for e in tctx.master.logs] == ["debug", "info", "alert", "warn", "error", "info"]
        assert tctx.master.has_log("THREE", "alert")
        assert not tctx.master.has_log("three", "warn")
        tctx.master.clear()
        assert not tctx.master.logs


def test_log_tier():
    assert log.log_tier("error") < log.log_tier("warn") < log.log_tier("info")
    assert log.log_tier("alert") == log.log_tier("info")
    assert log.log_tier("debug") > log.log_tier("info")
    assert log.log_tier("nonexistent") is None


class TestTermLog:
    @pytest.mark.parametrize("verbosity, shown", [
        ("error", ["e"]),
        ("warn", ["w", "e"]),
        ("info", ["i", "a", "w", "e"]),
        ("debug", ["d", "i", "a", "w", "e"]),
    ])
    def test_verbosity(self, verbosity, shown):
        sio = io.StringIO()
        t = termlog.TermLog(outfile=sio)
        with tlab.context(t) as tctx:
            tctx.configure(t, termlog_verbosity=verbosity)
            for msg, level in [("d", "debug"), ("i", "info"), ("a", "alert"), ("w", "warn"), ("e", "error")]:
                ctx.log(f"<{msg}>", level)
        out = sio.getvalue()
        for msg in "diawe":
            assert (f"<{msg}>" in out) == (msg in shown)

    def test_bad_verbosity(self):
        t = termlog.TermLog(outfile=io.StringIO())
        with tlab.context(t) as tctx:
            with pytest.raises(exceptions.OptionsError):
                tctx.configure(t, termlog_verbosity="loud")
            assert tctx.options.termlog_verbosity == "info"
