"""Manifest loading and construction of the transformed dataset."""

from .build import (BugOutcome, DatasetBuild, build_transformed_dataset, export_provenance, remap_bug, transform_bug,
                    tree_hash)
from .manifest import BugCase, BugReport, Manifest, TriggerTest, bug_from_dict, load_manifest, manifest_from_dict

__all__ = [
    "BugCase",
    "BugOutcome",
    "BugReport",
    "DatasetBuild",
    "Manifest",
    "TriggerTest",
    "bug_from_dict",
    "build_transformed_dataset",
    "export_provenance",
    "load_manifest",
    "manifest_from_dict",
    "remap_bug",
    "transform_bug",
    "tree_hash",
]
