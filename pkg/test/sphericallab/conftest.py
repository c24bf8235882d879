import pytest

from sphericallab import ctx


@pytest.fixture(autouse=True)
def restore_ctx():
    """Labs built by a test install themselves as ctx; put the previous one back."""
    saved = (ctx.master, ctx.log, ctx.options)
    yield
    ctx.master, ctx.log, ctx.options = saved
