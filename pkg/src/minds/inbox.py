from typing import Dict, List, Mapping

from src.minds.reply_parser import PolicyDecision
from src.models import InboxMessage
from src.world.grid import Position, distance
from src.world.state import World


def deliver_messages(
    decisions: Mapping[str, PolicyDecision],
    world: World,
    positions: Mapping[str, Position] = None,
) -> Dict[str, List[InboxMessage]]:
    """
    Route each non-blank message to every other living agent within the
    sender's perception radius.

    ``positions`` pins senders and receivers to where they stood when the
    messages were sent; it defaults to the world's current positions.
    Inboxes are ordered by sender id.
    """
    if positions is None:
        positions = {agent_id: agent.pos for agent_id, agent in world.agents.items()}
    r = world.grid.perception_radius
    inboxes: Dict[str, List[InboxMessage]] = {agent_id: [] for agent_id in positions}

    for sender_id in sorted(decisions):
        text = (decisions[sender_id].message or "").strip()
        if not text or sender_id not in positions:
            continue
        sender = world.agents.get(sender_id)
        sender_name = sender.name if sender else sender_id
        origin = positions[sender_id]
        for receiver_id, pos in positions.items():
            if receiver_id == sender_id:
                continue
            if distance(origin, pos, world.grid) <= r:
                inboxes[receiver_id].append(InboxMessage(sender=sender_name, sender_id=sender_id, text=text))
    return inboxes
