from .config import RunConfig, Preset, PRESETS, preset, load_config
from .runner import Engine, StepResult, run
from .log_writer import RunWriter
from .log_reader import RunLog, load_run, find_runs, iter_records, read_header
from .replay import replay, snapshot
from .summary import summarize, action_counts, action_means, runs_frame

__all__ = [
    'RunConfig', 'Preset', 'PRESETS', 'preset', 'load_config',
    'Engine', 'StepResult', 'run', 'RunWriter',
    'RunLog', 'load_run', 'find_runs', 'iter_records', 'read_header',
    'replay', 'snapshot',
    'summarize', 'action_counts', 'action_means', 'runs_frame',
]
