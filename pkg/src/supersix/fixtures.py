"""Shared tracker test vectors.

Generates random but deterministic event sequences (seeded) and replays
them through the transition model, recording the state after every
sequence. The browser tracker replays the same JSON and must end in
identical states -- that bisimulation is what keeps the UI honest.

Run:  python -m supersix.fixtures [out.json]
"""

from __future__ import annotations

import json
import random
import sys

from .states import (
    GameState,
    OutcomeKind,
    TrackerEvent,
    apply_event,
    enumerate_states,
    is_decision_state,
)

CASES = 200
MAX_EVENTS = 40
SEED = 20240607


def _legal_events(state: GameState, pending: bool) -> list[TrackerEvent]:
    events = [TrackerEvent.ROLLED_SIX]
    if state.lid < 5:
        events.append(TrackerEvent.ROLLED_FREE)
    if state.lid >= 1:
        events.append(TrackerEvent.ROLLED_OCCUPIED)
    if pending and is_decision_state(state):
        events.append(TrackerEvent.STOPPED)
    return events


def _state_payload(state: GameState, human_turn: bool, pending: bool, winner):
    return {
        "lid": state.lid,
        "mover": state.mover,
        "opponent": state.opponent,
        "humanTurn": human_turn,
        "pendingDecision": pending,
        "winner": winner,
    }


def generate(seed: int = SEED, cases: int = CASES) -> dict:
    """Random legal event walks with their start and end states."""
    rng = random.Random(seed)
    starts = []
    for total in range(2, 13):
        starts.extend(enumerate_states(total))

    out = []
    for _ in range(cases):
        start_state = rng.choice(starts)
        start_turn = rng.random() < 0.5
        state, human_turn = start_state, start_turn
        pending = False
        winner = None
        events = []
        for _ in range(rng.randint(1, MAX_EVENTS)):
            event = rng.choice(_legal_events(state, pending))
            events.append(event.value)
            if event is TrackerEvent.STOPPED:
                state = state.mirror()
                human_turn = not human_turn
                pending = False
                continue
            outcome = apply_event(state, event)
            if outcome.kind is OutcomeKind.WIN:
                winner = "human" if human_turn else "opponent"
                pending = False
                break
            if outcome.kind is OutcomeKind.HANDOVER:
                state = outcome.state
                human_turn = not human_turn
                pending = False
            else:
                state = outcome.state
                pending = is_decision_state(state)
        out.append(
            {
                "start": _state_payload(start_state, start_turn, False, None),
                "events": events,
                "final": _state_payload(state, human_turn, pending, winner),
            }
        )
    return {"seed": seed, "cases": out}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    payload = generate()
    text = json.dumps(payload, indent=2)
    if argv:
        with open(argv[0], "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
