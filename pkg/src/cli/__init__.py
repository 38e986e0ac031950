from .stages import AnalyzeOptions, STAGES, run_stage
from .commands import cmd_run, cmd_analyze, cmd_report, exit_code, make_policy, pareto_front

__all__ = [
    'AnalyzeOptions', 'STAGES', 'run_stage',
    'cmd_run', 'cmd_analyze', 'cmd_report', 'exit_code', 'make_policy', 'pareto_front',
]
