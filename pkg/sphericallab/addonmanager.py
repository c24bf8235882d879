import traceback
import typing

from sphericallab import exceptions


def _get_name(itm):
    return getattr(itm, "name", itm.__class__.__name__.lower())


class Loader:
    """
        A loader object is passed to the load() event when addons start up.
    """
    def __init__(self, master):
        self.master = master

    def add_option(
        self,
        name: str,
        typespec: type,
        default: typing.Any,
        help: str,
        choices: typing.Optional[typing.Sequence[str]] = None
    ) -> None:
        """
            Add an option to the lab. Re-adding an option with an identical
            signature is a no-op; a conflicting signature is logged and the
            new declaration wins.
        """
        if name in self.master.options:
            existing = self.master.options._options[name]
            same_signature = (
                existing.name == name and
                existing.typespec == typespec and
                existing.default == default and
                existing.choices == choices
            )
            if same_signature:
                return
            else:
                self.master.log.warn("Over-riding existing option %s" % name)
        self.master.options.add_option(
            name,
            typespec,
            default,
            help,
            choices
        )


class AddonManager:
    def __init__(self, master):
        self.lookup: typing.Dict[str, typing.Any] = {}
        self.chain: typing.List[typing.Any] = []
        self.master = master
        master.options.changed.connect(self._configure_all)

    def _configure_all(self, options, updated):
        self.trigger("configure", updated)

    def clear(self):
        for a in self.chain:
            self.invoke_addon(a, "done")
        self.lookup = {}
        self.chain = []

    def get(self, name):
        """
            Retrieve an addon by name. Addon names are equal to the .name
            attribute on the instance, or the lower case class name if that
            does not exist.
        """
        return self.lookup.get(name, None)

    def register(self, addon):
        """
            Register an addon, call its load event and make it available by
            name. Raises AddonManagerError on name clashes.
        """
        name = _get_name(addon)
        if name in self.lookup:
            raise exceptions.AddonManagerError(
                "An addon called '%s' already exists." % name
            )
        loader = Loader(self.master)
        self.invoke_addon(addon, "load", loader)
        self.lookup[name] = addon
        self.chain.append(addon)
        self.master.options.process_deferred()
        return addon

    def add(self, *addons):
        for i in addons:
            self.register(i)
        self.invoke_addon_all("configure", self.master.options.keys())

    def names(self) -> typing.List[str]:
        return [_get_name(a) for a in self.chain]

    def __len__(self):
        return len(self.chain)

    def __contains__(self, item):
        name = _get_name(item)
        return name in self.lookup

    def invoke_addon_all(self, name, *args, **kwargs):
        for a in self.chain:
            self.invoke_addon(a, name, *args, **kwargs)

    def invoke_addon(self, addon, name, *args, **kwargs):
        """
            Invoke an event on an addon. Missing handlers are skipped.
        """
        func = getattr(addon, name, None)
        if func is None:
            return None
        if not callable(func):
            raise exceptions.AddonManagerError(
                "Addon handler {} ({}) not callable".format(name, addon)
            )
        return func(*args, **kwargs)

    def trigger(self, name, *args, **kwargs):
        """
            Trigger an event across all addons. Handler errors in the log
            event itself are printed rather than logged to avoid recursion.
        """
        for i in self.chain:
            try:
                self.invoke_addon(i, name, *args, **kwargs)
            except exceptions.OptionsError:
                raise
            except Exception:
                if name == "log":
                    traceback.print_exc()
                else:
                    raise
