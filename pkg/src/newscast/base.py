"""Estimator plumbing: scikit-learn-style parameter handling.

Estimators in this package follow the familiar conventions so they
compose with pipeline tooling that duck-types against them: constructor
arguments are stored verbatim as public attributes, ``get_params`` /
``set_params`` expose them, ``fit`` returns ``self``, and attributes
learned from data carry a trailing underscore.
"""

import inspect

from .errors import NotFittedError


class ParamMixin:
    """get_params/set_params over the constructor signature."""

    @classmethod
    def _param_names(cls) -> list[str]:
        sig = inspect.signature(cls.__init__)
        names = []
        for name, p in sig.parameters.items():
            if name == "self":
                continue
            if p.kind in (p.VAR_POSITIONAL, p.VAR_KEYWORD):
                raise TypeError(
                    f"{cls.__name__}.__init__ must use explicit parameters"
                )
            names.append(name)
        return sorted(names)

    def get_params(self, deep: bool = True) -> dict:
        return {name: getattr(self, name) for name in self._param_names()}

    def set_params(self, **params):
        valid = self._param_names()
        for name, value in params.items():
            if name not in valid:
                raise ValueError(
                    f"invalid parameter {name!r} for {type(self).__name__}; "
                    f"valid parameters are {valid}"
                )
            setattr(self, name, value)
        return self


def check_is_fitted(estimator, attribute: str) -> None:
    if not hasattr(estimator, attribute):
        raise NotFittedError(
            f"{type(estimator).__name__} is not fitted yet; call fit() first"
        )
