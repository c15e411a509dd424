"""scikit-learn compatible wrapper around the closed-form dimer dynamics.

``TunnelingDimer`` maps a column of dimensionless times ``tau = |g| t`` to
renormalized site probabilities and the norm factor, so the model can sit in
a ``Pipeline`` or ``ColumnTransformer`` next to ordinary feature steps.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from . import dynamics
from ._validation import check_tau_array
from .errors import DomainError
from .model import ModelParams, Site, make_params
from .spectral import eigensystem_analytic, metric_operator


class TunnelingDimer(TransformerMixin, BaseEstimator):
    """Renormalized occupation probabilities of the non-reciprocal dimer.

    Parameters
    ----------
    g : float, default=1.0
        Coupling constant. Must be nonzero.
    alpha : float, default=0.0
        Asymmetry in the open interval (-1, 1).
    initial : {"A", "B"}, default="A"
        Site holding the excitation at ``tau = 0``.

    Attributes
    ----------
    params_ : ModelParams
    eigensystem_ : BiorthogonalSystem
    metric_ : numpy.ndarray
        Metric operator of the fitted model.
    n_features_in_ : int
        Always 1 (the time column).

    Examples
    --------
    >>> import numpy as np
    >>> dimer = TunnelingDimer(alpha=0.6).fit()
    >>> dimer.transform(np.array([[0.0]])).tolist()
    [[1.0, 0.0, 1.0]]
    """

    _columns = ("prob_A", "prob_B", "norm")

    def __init__(self, g: float = 1.0, alpha: float = 0.0, initial: str = "A"):
        self.g = g
        self.alpha = alpha
        self.initial = initial

    def fit(self, X=None, y=None):
        try:
            Site(self.initial)
        except ValueError:
            raise DomainError(f"initial must be 'A' or 'B', got {self.initial!r}") from None
        self.params_: ModelParams = make_params(self.g, self.alpha)
        self.eigensystem_ = eigensystem_analytic(self.params_)
        self.metric_ = metric_operator(self.eigensystem_).matrix
        self.n_features_in_ = 1
        return self

    def transform(self, X) -> np.ndarray:
        """Columns ``prob_A``, ``prob_B``, ``norm`` for each time in ``X``."""
        check_is_fitted(self, "params_")
        taus = check_tau_array(X)
        p = self.params_
        phase = p.omega * p.to_time(taus)
        if Site(self.initial) is Site.A:
            prob_a = dynamics.prob_aa(p.beta, phase)
            prob_b = dynamics.prob_ab(p.beta, phase)
            norm = dynamics.norm_a(p.beta, phase)
        else:
            prob_a = dynamics.prob_ba(p.beta, phase)
            prob_b = dynamics.prob_bb(p.beta, phase)
            norm = dynamics.norm_b(p.beta, phase)
        return np.column_stack([prob_a, prob_b, norm])

    def predict(self, X) -> np.ndarray:
        """Most likely site ("A" or "B") at each time; ties go to the initial site."""
        out = self.transform(X)
        other = "B" if Site(self.initial) is Site.A else "A"
        own = 0 if other == "B" else 1
        return np.where(out[:, 1 - own] > out[:, own], other, self.initial)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "params_")
        return np.asarray(self._columns, dtype=object)
