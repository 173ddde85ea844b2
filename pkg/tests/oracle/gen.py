"""Seeded random-election generator for the property suites."""

import random

from stvtrace.model import Ballot, Candidate, ElectionData


def random_election(
    rng: random.Random,
    max_candidates: int = 6,
    max_papers: int = 40,
    max_vacancies: int = 3,
    min_candidates: int = 1,
    exact_vacancies: int | None = None,
    tag: str = "random",
) -> ElectionData:
    ncand = rng.randint(min_candidates, max_candidates)
    if exact_vacancies is not None:
        vacancies = min(exact_vacancies, ncand)
    else:
        vacancies = rng.randint(1, min(max_vacancies, ncand))
    papers = rng.randint(1, max_papers)
    ballots = []
    remaining = papers
    while remaining > 0:
        mult = rng.randint(1, min(4, remaining))
        length = rng.randint(1, ncand)
        prefs = tuple(rng.sample(range(ncand), length))
        ballots.append(Ballot(preferences=prefs, multiplicity=mult))
        remaining -= mult
    return ElectionData(
        name=f"{tag}-c{ncand}-v{vacancies}-p{papers}",
        vacancies=vacancies,
        candidates=tuple(Candidate(id=i, name=f"Candidate {i}") for i in range(ncand)),
        ballots=tuple(ballots),
    )


def random_preferences(rng: random.Random, num_candidates: int) -> list[int]:
    return rng.sample(range(num_candidates), rng.randint(1, num_candidates))


def split_multiplicities(data: ElectionData) -> ElectionData:
    """Every multiplicity-n ballot becomes n copies at multiplicity 1."""
    singles = tuple(
        Ballot(preferences=b.preferences, multiplicity=1)
        for b in data.ballots
        for _ in range(b.multiplicity)
    )
    return ElectionData(
        name=data.name,
        vacancies=data.vacancies,
        candidates=data.candidates,
        groups=data.groups,
        ballots=singles,
        htv_cards=data.htv_cards,
        year=data.year,
        region=data.region,
    )
