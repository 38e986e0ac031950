from .genome import Genome, MutationConfig, PERSONALITY_TRAITS, sample_genome, mutate, render_traits
from .agent import AgentState, init_population, tick_vitals, death_cause, STARVATION, AGE
from .memory import truncate_memory, count_tokens

__all__ = [
    'Genome', 'MutationConfig', 'PERSONALITY_TRAITS', 'sample_genome', 'mutate', 'render_traits',
    'AgentState', 'init_population', 'tick_vitals', 'death_cause', 'STARVATION', 'AGE',
    'truncate_memory', 'count_tokens',
]
