import numpy as np


def make_rng(seed: int, *streams: int) -> np.random.Generator:
    """
    Generador PCG64 derivado de (seed, *streams).

    El flujo de cada ronda depende solo de la semilla y del índice de ronda,
    así que el orden de ejecución no altera los resultados.
    """
    entropia = [int(seed)] + [int(s) for s in streams]
    if any(e < 0 for e in entropia):
        raise ValueError("La semilla y los índices de flujo deben ser no negativos")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropia)))


def uniform_shift(rng: np.random.Generator, width: float) -> float:
    """Desplazamiento uniforme en [0, width), acotado estrictamente por debajo del ancho."""
    valor = float(rng.uniform(0.0, width))
    if valor >= width:
        valor = float(np.nextafter(width, 0.0))
    return valor


def derive_seed(seed: int, index: int) -> int:
    """Semilla de 32 bits para el ensayo `index` de un barrido con semilla `seed`."""
    return int(np.random.SeedSequence([int(seed), int(index)]).generate_state(1)[0])
