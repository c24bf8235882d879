import abc
import dataclasses
import typing

T = typing.TypeVar('T', bound='Serializable')


class Serializable(metaclass=abc.ABCMeta):
    """
    Abstract Base Class that defines an API to save and restore an object's state.
    """

    @classmethod
    @abc.abstractmethod
    def from_state(cls: typing.Type[T], state) -> T:
        """
        Create a new object from the given state.
        """
        raise NotImplementedError()

    @abc.abstractmethod
    def get_state(self):
        """
        Retrieve object state.
        """
        raise NotImplementedError()

    def copy(self: T) -> T:
        return self.from_state(self.get_state())


class StateDataclass(Serializable):
    """
    Serializable mix-in for dataclasses. Field values that are themselves
    Serializable are stored by state; everything else verbatim. Subclasses
    with nested fields override from_state.
    """

    def get_state(self):
        state = {}
        for f in dataclasses.fields(self):
            v = getattr(self, f.name)
            if isinstance(v, Serializable):
                v = v.get_state()
            elif isinstance(v, (list, tuple)) and v and isinstance(v[0], Serializable):
                v = [i.get_state() for i in v]
            state[f.name] = v
        return state

    @classmethod
    def from_state(cls, state):
        names = {f.name for f in dataclasses.fields(cls)}
        return cls(**{k: v for k, v in state.items() if k in names})
