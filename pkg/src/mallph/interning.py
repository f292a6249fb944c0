"""Hash-consed immutable tree nodes.

Every node is interned on construction, so structurally equal trees are the
same object.  Equality and hashing are therefore identity based and O(1),
which is what the memoizing provers rely on.
"""

from __future__ import annotations

import itertools
from typing import Any, ClassVar

_TABLE: dict[tuple, "Node"] = {}
_COUNTER = itertools.count()


class Node:
    __slots__ = ("uid", "_text", "__weakref__")
    fields: ClassVar[tuple[str, ...]] = ()

    uid: int

    def __new__(cls, *args: Any) -> "Node":
        if len(args) != len(cls.fields):
            raise TypeError(f"{cls.__name__} expects {len(cls.fields)} arguments, got {len(args)}")
        key = (cls, *args)
        node = _TABLE.get(key)
        if node is None:
            cls._validate(*args)
            node = object.__new__(cls)
            for name, value in zip(cls.fields, args):
                object.__setattr__(node, name, value)
            object.__setattr__(node, "uid", next(_COUNTER))
            object.__setattr__(node, "_text", None)
            node._setup()
            _TABLE[key] = node
        return node

    @classmethod
    def _validate(cls, *args: Any) -> None:
        pass

    def _setup(self) -> None:
        pass

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __reduce__(self):
        return (type(self), tuple(getattr(self, f) for f in self.fields))

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __repr__(self) -> str:
        args = ", ".join(repr(getattr(self, f)) for f in self.fields)
        return f"{type(self).__name__}({args})"

    def __str__(self) -> str:
        text = self._text
        if text is None:
            text = self._render()
            object.__setattr__(self, "_text", text)
        return text

    def _render(self) -> str:  # pragma: no cover - overridden
        raise NotImplementedError


def check_name(name: object) -> None:
    if not isinstance(name, str) or not name:
        raise ValueError(f"variable names must be nonempty strings, got {name!r}")
