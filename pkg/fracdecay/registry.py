"""
Registry Module

This module provides a small registry pattern for named implementations.
Kernel families, operator apply strategies, time-stepping schemes and
verification checks are all looked up by name through a Registry, so the
configuration layer can refer to them with plain strings.
"""

from typing import Callable, Dict, Generic, List, Optional, TypeVar

from fracdecay.exceptions import FracDecayError

T = TypeVar('T')


class Registry(Generic[T]):
    """
    Registry mapping names (and aliases) to implementations.

    Parameters
    ----------
    kind : str
        Human-readable name of what is registered, used in error messages.

    Example
    -------
    >>> schemes = Registry('time scheme')
    >>> schemes.register('euler', EulerScheme, aliases=['forward_euler'])
    >>> scheme = schemes.create('forward_euler')
    """

    def __init__(self, kind: str):
        self.kind = kind
        self._entries: Dict[str, T] = {}
        self._aliases: Dict[str, str] = {}

    def register(self, name: str, entry: T, aliases: Optional[List[str]] = None) -> None:
        """
        Register an implementation under a name.

        Parameters
        ----------
        name : str
            Primary identifier
        entry : T
            Class, factory or object to register
        aliases : List[str], optional
            Alternative names

        Raises
        ------
        FracDecayError
            If the name or an alias is already registered
        """
        if name in self._entries:
            raise FracDecayError(f"{self.kind.capitalize()} '{name}' is already registered")
        self._entries[name] = entry
        for alias in aliases or []:
            if alias in self._aliases or alias in self._entries:
                raise FracDecayError(f"Alias '{alias}' is already registered")
            self._aliases[alias] = name

    def resolve(self, name: str) -> str:
        """Return the primary name for a name or alias."""
        return self._aliases.get(name, name)

    def get(self, name: str) -> T:
        """
        Look up a registered entry.

        Raises
        ------
        FracDecayError
            If the name is unknown; the message lists the available names
        """
        actual = self.resolve(name)
        if actual not in self._entries:
            raise FracDecayError(
                f"No {self.kind} registered as '{name}'. "
                f"Available: {', '.join(self.names())}"
            )
        return self._entries[actual]

    def create(self, name: str, *args, **kwargs):
        """Instantiate (or call) the entry registered under name."""
        entry = self.get(name)
        if not callable(entry):
            raise FracDecayError(f"{self.kind.capitalize()} '{name}' is not callable")
        return entry(*args, **kwargs)

    def names(self) -> List[str]:
        """List primary names, sorted."""
        return sorted(self._entries)

    def items(self):
        """Iterate over (name, entry) pairs in registration order."""
        return list(self._entries.items())

    def is_registered(self, name: str) -> bool:
        return self.resolve(name) in self._entries

    def decorator(self, name: str, aliases: Optional[List[str]] = None) -> Callable[[T], T]:
        """Return a decorator registering the decorated object under name."""
        def _register(entry: T) -> T:
            self.register(name, entry, aliases)
            return entry
        return _register
