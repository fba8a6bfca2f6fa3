"""CRLab API package."""

from crlab.api.client import LabClient, standard_solution

__all__ = ["LabClient", "standard_solution"]
