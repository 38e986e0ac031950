"""
Tag vocabularies for agent- and group-level annotation.

Each vocabulary maps a tag name to its one-line definition. Judges may
answer in any letter case; ``canonical_tag`` maps a reply back onto the
vocabulary or returns None.
"""

from typing import Dict, Optional

AGENT_EVENT_TAGS: Dict[str, str] = {
    "Reproduction": "An agent produces offspring at a timestep.",
    "Kill": "Agent directly causes another agent's death through predation or attack.",
    "Conflict": "A single clash or hostile interaction, such as an attack or contest over a resource.",
    "Artifact Created": "Creation of a new artifact in the environment.",
    "Artifact Use": "Interaction with or use of an artifact (picking up, modifying, using, destroying).",
    "Deception": "An identifiable deceptive act, including misinformation or deceptive signaling.",
    "Territory Claim": "Explicit act of claiming an area as one's own.",
    "Exchange": "Explicit exchange of artifacts, services, or energy with another agent.",
}

AGENT_BEHAVIOR_TAGS: Dict[str, str] = {
    "Foraging": "Repeated searching for and consuming resources.",
    "Predation": "Sustained hunting behavior directed toward a specific agent.",
    "Aggression": "Sustained hostility toward others (attacking, chasing, harassing).",
    "Submission": "Sustained yielding or giving way to others (e.g., avoiding conflict, showing deference).",
    "Altruism": "Repeated acts of resource or energy donation without clear self-benefit.",
    "Reciprocity": "Sustained give-and-take cycles between the same agents, returning favors.",
    "Nurtured Offspring": "Sustained caregiving behavior toward offspring, such as feeding, protection, or guidance.",
    "Exploration": "Repeated attempts to discover new areas or resources.",
    "Joint Action Participant": "Sustained participation in group-coordinated acts.",
    "Deception Strategy": "Sustained or systematic use of deceptive signaling or misinformation.",
    "Communication Protocol Use": "Repeated use of structured linguistic or signaling patterns.",
    "Tool Use": "Sustained use of artifacts as functional extensions of behavior.",
}

AGENT_EMERGENT_TAGS: Dict[str, str] = {
    "None": "No emergent behavior observed.",
    "Record Keeping": "Agent recording or documenting environment or events.",
    "Specialization": "Specializing on the same role or task repeatedly.",
    "Territoriality": "Defending or patrolling specific areas.",
    "Creativity": "Creation of novel or unexpected ideas or artifacts.",
    "Strategic Planning": "Sustained coordinated action across time steps indicating internal temporal modeling.",
    "Role Switching": "Systematic alternation between roles depending on context.",
    "Unexpected": "An unexpected behavior for which no other tag is fitting, to be described in free text.",
}

GROUP_EVENT_TAGS: Dict[str, str] = {
    "Coalition Formed": "Two or more agents explicitly declare alliance or agreement.",
    "Coalition Broken": "Explicit dissolution or betrayal of a coalition.",
    "Leader Declared": "An agent explicitly assumes leadership and others accept to follow.",
    "Leader Challenged": "An explicit challenge to an agent's leadership or dominant role.",
    "Resource Conflict": "Multiple agents attempt to secure the same resource at a timestep.",
    "Territory Conflict": "Direct clash of claims over the same area.",
    "Coordinated Attack": "Multiple agents target the same victim within a narrow timestep.",
    "Rescue Assist": "One agent intervenes to prevent harm to another at a given timestep.",
    "Signal Alignment": "Distinct agents broadcast semantically aligned messages in the same timestep.",
    "Voting": "Agents vote to take a group decision at a given timestep.",
}

GROUP_BEHAVIOR_TAGS: Dict[str, str] = {
    "Coordination": "Sustained synchronized or cooperative actions toward shared goals.",
    "Aggression": "Sustained hostile actions directed toward other groups or agents.",
    "Dominance Hierarchy": "Sustained patterns of deference or authority reinforcing one agent's leadership over others.",
    "Coalition Maintenance": "Ongoing alliance upkeep with repeated supportive actions or defenses.",
    "Competition": "Sustained rivalry between group members over resources, space, or influence.",
    "Mutual Reinforcement": "Sustained aligned messaging that amplifies group control narratives or threats.",
    "Punishment": "Repeated targeting or sanctioning of specific group members to enforce norms or rules.",
    "Resource Flow": "Repeated transfers of resources circulating among group members.",
    "Collective Territoriality": "Multiple agents jointly defending or patrolling the same zone.",
    "Mimicry / Imitation": "Repeated mirroring of phrasing, movement, or artifact strategies.",
    "Internal Conflict": "Sustained aggression within the group.",
    "Emergent Protocol": "Repeated structured communication or collective displays.",
    "Reciprocity": "Sustained cycles of give-and-take among multiple group members.",
}

GROUP_EMERGENT_TAGS: Dict[str, str] = {
    "Cultural Norms": "Emergence of shared rules or standards of behavior.",
    "Hierarchy": "Emergence of ranked positions.",
    "Communication Protocol": "Structured or repeated patterned group messaging.",
    "Resource Network": "Group-level exchange and circulation of resources.",
    "Economy": "Emergent organized goods and services exchange.",
    "Clustering": "Formation of stable subgroups or cliques.",
    "Infrastructure": "Emergence of shared tools or artifacts used collectively.",
    "Division of Labor": "Complementary and stable roles distributed across agents.",
    "Collective Memory": "Shared information storage via artifacts, messages, or spatial organization.",
    "Institutionalization": "Persistent rule systems enforced through group mechanisms.",
    "None": "No emergent group behavior observed.",
    "Unexpected": "An unexpected behavior for which no other tag is fitting, to be described in free text.",
}

VOCABULARIES = {
    "agent": {"events": AGENT_EVENT_TAGS, "behaviors": AGENT_BEHAVIOR_TAGS, "emergence": AGENT_EMERGENT_TAGS},
    "group": {"events": GROUP_EVENT_TAGS, "behaviors": GROUP_BEHAVIOR_TAGS, "emergence": GROUP_EMERGENT_TAGS},
}


def vocabulary(level: str, section: str) -> Dict[str, str]:
    try:
        return VOCABULARIES[level][section]
    except KeyError:
        raise ValueError(f"No tag vocabulary for level '{level}' section '{section}'")


def canonical_tag(tag: str, tags: Dict[str, str]) -> Optional[str]:
    wanted = " ".join(str(tag).split()).casefold()
    for name in tags:
        if name.casefold() == wanted:
            return name
    return None


def render_tags(tags: Dict[str, str]) -> str:
    """(TAG: description) lines in the form the annotation prompts list them."""
    return "\n        ".join(f"({name}: {description})" for name, description in tags.items())
