#!/usr/bin/env python3

""" Monte Carlo campaigns: many seeded trials per node count, a pilot run
that fixes the threshold grid, aggregation and CSV output. """

# std
import json
import multiprocessing
import os
import pathlib
import time
from typing import Dict, List, Optional, Sequence, Tuple, Union

# 3rd party
import numpy as np
import pandas as pd
import tqdm.auto

# ours
from widesense.harness.config import ExperimentConfig
from widesense.harness.rates import rates_frame
from widesense.harness.trial import TrialRecord, default_threshold, run_trial
from widesense.metrics.detection import aggregate_outcomes
from widesense.metrics.roc import (
    RocCurve,
    best_threshold,
    default_lambda_grid,
    roc_sweep,
)
from widesense.result import AbstractResult
from widesense.util.cli import handle_overwrite
from widesense.util.log import get_logger
from widesense.util.metadata import (
    failsafe_serialize,
    nested_dict,
    version_info,
)
from widesense.util.seeding import trial_seed
from widesense.worker import AbstractWorker

#: Columns of ``trials.csv``
TRIAL_COLUMNS = [
    "trial_seed",
    "K",
    "mse",
    "hits",
    "busy",
    "false",
    "idle",
    "converged",
]
#: Columns of ``aggregate.csv``
AGGREGATE_COLUMNS = [
    "K",
    "mean_mse",
    "mse_stderr",
    "Pd",
    "Pd_stderr",
    "Pf",
    "Pf_stderr",
    "threshold",
    "trials",
    "not_converged",
]
#: Columns of ``roc.csv``
ROC_COLUMNS = ["K", "lambda", "Pd", "Pf"]
#: Output files in the order they are written
OUTPUT_FILES = [
    "trials.csv",
    "aggregate.csv",
    "roc.csv",
    "rates.csv",
    "metadata.json",
]

CSV_OPTIONS = dict(index=False, float_format="%.9g", lineterminator="\n")


class TrialCalculator(object):
    """Holds what every trial of one node count needs. This is a separate
    class from :class:`Campaign` so that worker processes only have to
    unpickle the configuration."""

    def __init__(self, cfg: ExperimentConfig, K: int, threshold: float):
        self.cfg = cfg
        self.K = K
        self.threshold = threshold

    def calc(self, seed: int) -> TrialRecord:
        return run_trial(self.cfg, seed, K=self.K, threshold=self.threshold)


class Campaign(AbstractWorker):
    """Runs ``cfg.trials`` trials for every node count of the configuration.

    Usage:

    .. code-block:: python

        c = Campaign(ExperimentConfig(trials=100))
        c.set_no_workers(4)
        result = c.run()
        result.write("output/")

    Every trial is fully determined by the master seed and its index, and
    the same trial seeds are used for every node count, so node counts are
    compared on identical spectra. Results are folded in trial order, so the
    number of workers never changes the output.
    """

    def __init__(self, cfg: ExperimentConfig = None):
        super().__init__()
        self.log = get_logger("Campaign")
        if cfg is None:
            cfg = ExperimentConfig()
        #: Validated experiment configuration
        self.cfg = cfg.validate()

        self.md = nested_dict()
        self.md["git"] = version_info(self.log)
        self.md["time"] = time.strftime("%a %d %b %Y %H:%M", time.gmtime())
        self.md["config"] = cfg.to_dict()

        self._no_workers = cfg.workers  # type: Optional[int]

        self._progress_bar = True
        self._tqdm_kwargs = {}

    # **************************************************************************
    # Settings
    # **************************************************************************

    def set_progress_bar(self, show: bool, **kwargs) -> None:
        """Settings for progress bar

        Args:
            show: Show progress bar?
            **kwargs: Keyword arguments for tqdm progress bar
        """
        self._progress_bar = show
        self._tqdm_kwargs = kwargs

    def set_no_workers(self, no_workers: int) -> None:
        """Set the number of worker processes to be used. ``0`` or ``None``
        means one per CPU.

        Args:
            no_workers: Number of worker processes

        Returns:
            ``None``
        """
        self._no_workers = no_workers

    # **************************************************************************
    # Seeds
    # **************************************************************************

    def trial_seeds(self) -> List[int]:
        return [
            trial_seed(self.cfg.master_seed, i) for i in range(self.cfg.trials)
        ]

    def pilot_seeds(self) -> List[int]:
        return [
            trial_seed(self.cfg.master_seed, i, pilot=True)
            for i in range(self.cfg.lambda_grid.pilot_trials)
        ]

    # **************************************************************************
    # Run
    # **************************************************************************

    def pilot(
        self, k_values: Sequence[int] = None
    ) -> Tuple[np.ndarray, float]:
        """Fix the threshold grid and the decision threshold.

        Explicit values from the configuration are used as they are.
        Otherwise a pilot run at the largest node count scales the grid to
        the median level recovered on truly busy subbands. The threshold is
        the grid point maximising ``Pd - Pf`` of the pilot run among those
        whose false alarm probability stays within ``target_pf``.

        Returns:
            Threshold grid, decision threshold
        """
        settings = self.cfg.lambda_grid
        if settings.values is not None and settings.threshold is not None:
            return np.array(settings.values), settings.threshold
        if k_values is None:
            k_values = self.cfg.k_values
        K = max(k_values)
        records = self._run_trials(
            K, self.pilot_seeds(), default_threshold(self.cfg), "Pilot: "
        )
        if settings.values is not None:
            grid = np.array(settings.values)
        else:
            busy = [r.x_hat[r.d_true == 1] for r in records]
            grid = default_lambda_grid(
                np.concatenate(busy),
                points=settings.points,
                low=settings.low,
                high=settings.high,
            )
        if settings.threshold is not None:
            threshold = settings.threshold
        else:
            curve = roc_sweep(
                [r.x_hat for r in records],
                [r.d_true for r in records],
                grid,
                mode=self.cfg.aggregation,
            )
            threshold = best_threshold(curve, pf_max=settings.target_pf)
            self.md["pilot"]["target_pf"] = settings.target_pf
        self.md["pilot"]["K"] = K
        self.md["pilot"]["trials"] = len(records)
        self.log.info(
            "Pilot run at K={}: threshold grid {:.3g} ... {:.3g}, decision "
            "threshold {:.3g}.".format(K, grid[0], grid[-1], threshold)
        )
        return grid, threshold

    def run(self, k_values: Sequence[int] = None) -> "CampaignResult":
        """Run the campaign.

        Args:
            k_values: Node counts to run, default: all of the configuration

        Returns:
            :class:`CampaignResult`
        """
        if k_values is None:
            k_values = self.cfg.k_values
        k_values = [int(K) for K in k_values]
        start_time = time.time()

        grid, threshold = self.pilot(k_values)
        self.md["lambda_grid"] = grid
        self.md["threshold"] = threshold

        seeds = self.trial_seeds()
        trial_frames = []
        aggregates = []
        curves = {}  # type: Dict[int, RocCurve]
        for K in k_values:
            records = self._run_trials(
                K, seeds, threshold, "K={}: ".format(K)
            )
            trial_frames.append(_trials_frame(records))
            aggregate = aggregate_outcomes(
                [r.outcome for r in records], mode=self.cfg.aggregation
            )
            aggregate["K"] = K
            aggregate["threshold"] = threshold
            aggregates.append(aggregate)
            curves[K] = roc_sweep(
                [r.x_hat for r in records],
                [r.d_true for r in records],
                grid,
                mode=self.cfg.aggregation,
            )
            self.log.info(
                "K={}: mean MSE {:.4g}, Pd {:.4g}, Pf {:.4g}".format(
                    K, aggregate["mean_mse"], aggregate["Pd"], aggregate["Pf"]
                )
            )
            if aggregate["not_converged"]:
                self.log.warning(
                    "{} of {} recoveries at K={} did not converge.".format(
                        aggregate["not_converged"], len(records), K
                    )
                )

        self.md["run_time"] = time.time() - start_time

        return CampaignResult(
            trials=pd.concat(trial_frames, ignore_index=True),
            aggregate=pd.DataFrame(aggregates, columns=AGGREGATE_COLUMNS),
            roc=curves,
            rates=rates_frame(self.cfg, k_values),
            md=self.md,
        )

    def _resolve_workers(self) -> int:
        no_workers = self._no_workers
        if not no_workers:
            no_workers = os.cpu_count()
        if not no_workers:
            # os.cpu_count() didn't work
            self.log.warning(
                "os.cpu_count() could not determine the number of cores. "
                "Falling back to single core mode."
            )
            no_workers = 1
        return no_workers

    def _iterator(self, results, total: int, desc: str):
        if not self._progress_bar:
            return results
        tqdm_kwargs = dict(desc=desc, unit=" trial", total=total)
        tqdm_kwargs.update(self._tqdm_kwargs)
        return tqdm.auto.tqdm(results, **tqdm_kwargs)

    def _run_trials(
        self, K: int, seeds: List[int], threshold: float, desc: str
    ) -> List[TrialRecord]:
        calculator = TrialCalculator(self.cfg, K, threshold)
        no_workers = min(self._resolve_workers(), len(seeds))
        if no_workers >= 2:
            self.log.info(
                "Started queue with {} trial(s) distributed over up to {} "
                "worker(s).".format(len(seeds), no_workers)
            )
            with multiprocessing.Pool(processes=no_workers) as pool:
                results = pool.imap(calculator.calc, seeds)
                records = list(self._iterator(results, len(seeds), desc))
        else:
            self.log.info(
                "Started queue with {} trial(s) in single core mode.".format(
                    len(seeds)
                )
            )
            records = [
                calculator.calc(seed)
                for seed in self._iterator(seeds, len(seeds), desc)
            ]
        return records


def _trials_frame(records: List[TrialRecord]) -> pd.DataFrame:
    rows = [
        (
            r.trial_seed,
            r.K,
            r.outcome.mse,
            r.outcome.detect_hits,
            r.outcome.busy_count,
            r.outcome.false_hits,
            r.outcome.idle_count,
            int(r.outcome.converged),
        )
        for r in records
    ]
    return pd.DataFrame(rows, columns=TRIAL_COLUMNS)


class CampaignResult(AbstractResult):
    def __init__(
        self,
        trials: pd.DataFrame,
        aggregate: pd.DataFrame,
        roc: Dict[int, RocCurve],
        rates: pd.DataFrame,
        md,
    ):
        super().__init__()
        #: One row per trial and node count
        self.trials = trials
        #: One row per node count
        self.aggregate = aggregate
        #: ROC curve per node count
        self.roc = roc
        #: Sampling rates per node count
        self.rates = rates
        self.md = md  # type: nested_dict

    @property
    def threshold(self) -> float:
        return self.md["threshold"]

    def roc_frame(self) -> pd.DataFrame:
        """All ROC curves stacked, with a leading ``K`` column."""
        frames = []
        for K, curve in self.roc.items():
            df = curve.to_frame()
            df.insert(0, "K", K)
            frames.append(df)
        if not frames:
            return pd.DataFrame(columns=ROC_COLUMNS)
        return pd.concat(frames, ignore_index=True)[ROC_COLUMNS]

    def tables(self) -> Dict[str, pd.DataFrame]:
        return {
            "trials.csv": self.trials,
            "aggregate.csv": self.aggregate,
            "roc.csv": self.roc_frame(),
            "rates.csv": self.rates,
        }

    def write(
        self,
        directory: Union[str, pathlib.PurePath],
        overwrite="ask",
        files: Sequence[str] = None,
    ) -> bool:
        """Write output files.

        Args:
            directory: Output directory (created if needed)
            overwrite: How to proceed if an output file already exists:
                'ask' (ask interactively for approval if we have to
                overwrite), 'overwrite' (overwrite without asking), 'raise'
                (raise Exception if file exists). Default is 'ask'.
            files: Subset of :data:`OUTPUT_FILES`, default: all

        Returns:
            True if the files were written
        """
        directory = pathlib.Path(directory)
        if files is None:
            files = OUTPUT_FILES
        unknown = set(files) - set(OUTPUT_FILES)
        if unknown:
            raise ValueError(
                "Unknown output file(s) {}.".format(sorted(unknown))
            )
        paths = [directory / name for name in files]
        if not handle_overwrite(paths, behavior=overwrite, log=self.log):
            return False
        if not directory.is_dir():
            self.log.debug("Creating directory '{}'.".format(directory))
            directory.mkdir(parents=True)

        tables = self.tables()
        for name in files:
            path = directory / name
            if name == "metadata.json":
                md_json = json.dumps(
                    failsafe_serialize(self.md), sort_keys=True, indent=4
                )
                path.write_text(md_json + "\n")
            else:
                tables[name].to_csv(path, na_rep="nan", **CSV_OPTIONS)
            self.log.debug("Wrote '{}'.".format(path))
        self.log.info(
            "Wrote {} file(s) to '{}'.".format(len(files), directory)
        )
        return True


def sweep_k(
    cfg: ExperimentConfig, no_workers: int = None, progress_bar=True
) -> CampaignResult:
    """Run ``cfg.trials`` trials for every node count of ``cfg.k_values``.

    Args:
        cfg: Experiment configuration
        no_workers: Worker processes, default: ``cfg.workers``
        progress_bar: Show progress bars

    Returns:
        :class:`CampaignResult`
    """
    campaign = Campaign(cfg)
    if no_workers is not None:
        campaign.set_no_workers(no_workers)
    campaign.set_progress_bar(progress_bar)
    return campaign.run()
