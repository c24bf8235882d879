import sys

from sphericallab import addonmanager
from sphericallab import ctx as lab_ctx
from sphericallab import master
from sphericallab import options as lab_options


class TestAddons(addonmanager.AddonManager):
    def __init__(self, lab):
        super().__init__(lab)

    def trigger(self, event, *args, **kwargs):
        if event == "log":
            self.master.logs.append(args[0])
        super().trigger(event, *args, **kwargs)


class RecordingLab(master.Lab):
    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.addons = TestAddons(self)
        self.logs = []

    def dump_log(self, outf=sys.stdout):
        for i in self.logs:
            print(f"{i.level}: {i.msg}", file=outf)

    def has_log(self, txt, level=None):
        for i in self.logs:
            if level and i.level != level:
                continue
            if txt.lower() in i.msg.lower():
                return True
        return False

    def clear(self):
        self.logs = []


class context:
    """
        A context for testing library code and experiment addons. It installs
        a RecordingLab as sphericallab.ctx so that budget checks, option reads
        and log calls behave as they do under the command line.
    """

    def __init__(self, *addons, options=None, **kwargs):
        self._saved = (lab_ctx.master, lab_ctx.log, lab_ctx.options)
        options = options or lab_options.Options()
        self.master = RecordingLab(options)
        self.options = self.master.options
        for a in addons:
            self.master.addons.add(a)
        if kwargs:
            self.options.update(**kwargs)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        lab_ctx.master, lab_ctx.log, lab_ctx.options = self._saved
        return False

    def configure(self, addon, **kwargs):
        """
            Register addon if needed, then update the options with kwargs,
            rolling back on error.
        """
        if addon not in self.master.addons:
            self.master.addons.register(addon)
        with self.options.rollback(kwargs.keys(), reraise=True):
            if kwargs:
                self.options.update(**kwargs)
            else:
                self.master.addons.invoke_addon(addon, "configure", {})

    def invoke(self, addon, event, *args, **kwargs):
        return self.master.addons.invoke_addon(addon, event, *args, **kwargs)
