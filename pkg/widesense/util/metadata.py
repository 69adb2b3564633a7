#!/usr/bin/env python3

""" Run metadata: version, git state and serialization helpers """

# std
import collections
from collections.abc import Iterable
import pathlib
import time
from typing import Dict

# 3rd party
import numpy as np

try:
    import git
except ImportError:
    git = None


def nested_dict():
    """Dictionary-like object which automatically adds levels, e.g.

    .. code-block:: python

        md = nested_dict()
        md['campaign']['pilot']['lambda'] = 0.3
    """
    return collections.defaultdict(nested_dict)


def version_info(log=None, path=None) -> Dict[str, str]:
    vinfo = {}
    vinfo.update(get_git_info(log=log, path=path))
    vinfo["version"] = get_version()
    return vinfo


def get_git_info(log=None, path=None) -> Dict[str, str]:
    """Return dictionary containing status of the git repository (commit
    hash, date etc.)

    Args:
        log: logging.Logger object (optional)
        path: path to .git subfolder or search path (optional)

    Returns:
        dictionary
    """
    git_config = {
        "branch": "unknown",
        "sha": "unknown",
        "msg": "unknown",
        "time": "unknown",
    }

    if git is None:
        msg = (
            "Module 'git' not found, will not add git version "
            "information to the output files."
        )
        if log:
            log.warning(msg)
        return git_config

    if not path:
        path = pathlib.Path(__file__)
    try:
        repo = git.Repo(path=path, search_parent_directories=True)
    except (git.InvalidGitRepositoryError, git.NoSuchPathError):
        return git_config

    try:
        git_config["branch"] = repo.head.name
        hcommit = repo.head.commit
    except ValueError:
        # Repository without any commit yet
        return git_config
    git_config["sha"] = hcommit.hexsha
    git_config["msg"] = hcommit.message.strip("\n")
    git_config["time"] = time.strftime(
        "%a %d %b %Y %H:%M", time.gmtime(hcommit.committed_date)
    )
    return git_config


def failsafe_serialize(obj):
    """Turn ``obj`` into something ``json.dumps`` accepts: containers are
    converted recursively, numpy scalars become python numbers and
    everything else is stringified.
    """
    if isinstance(obj, dict):
        return {str(key): failsafe_serialize(v) for key, v in obj.items()}
    elif isinstance(obj, np.generic):
        return obj.item()
    elif isinstance(obj, Iterable) and not isinstance(obj, str):
        return [failsafe_serialize(v) for v in obj]
    elif obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    else:
        return str(obj)


def get_version() -> str:
    """Return widesense version."""
    version_path = pathlib.Path(__file__).parent.parent / "version.txt"
    with version_path.open("r") as version_file:
        version = version_file.read().strip()
    return version
