import math
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import shapely
from loguru import logger
from shapely.geometry import LineString, Point as ShapelyPoint, Polygon

from ..config.constants import AREA_TOLERANCE, ORIENTATION_TOLERANCE
from ..exceptions import (
    ContainmentError, EmptyInputError, GeneralPositionError,
    MCPError, NonOverlappingError, PolygonsNotDisjointError
)
from ..models.point import Point
from ..models.polygon import ConvexPolygon, PetalDecomposition

Coord = Tuple[float, float]

PARAM_TOLERANCE = 1e-12


def cross(o: Coord, a: Coord, b: Coord) -> float:
    """Producto cruz (a - o) x (b - o); positivo si o, a, b giran a la izquierda."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def line_side(a: Point, b: Point, p: Point) -> float:
    """
    Lado de `p` respecto a la recta dirigida a -> b.

    Returns:
        Valor positivo a la izquierda, negativo a la derecha, cero sobre la recta
    """
    return cross((a.x, a.y), (b.x, b.y), (p.x, p.y))


def convex_hull(points: Sequence[Point]) -> ConvexPolygon:
    """
    Envolvente convexa por cadena monótona (Andrew).

    Los puntos colineales del borde se eliminan; entradas colineales producen
    un segmento de 2 vértices y un único punto un polígono de 1 vértice.

    Args:
        points: Puntos de entrada (se conservan sus ids)

    Returns:
        Polígono convexo en sentido antihorario

    Raises:
        EmptyInputError: Si no hay puntos
    """
    if not points:
        raise EmptyInputError("La envolvente convexa requiere al menos un punto")

    unicos: Dict[Coord, Point] = {}
    for p in points:
        unicos.setdefault((p.x, p.y), p)
    pts = sorted(unicos.values(), key=lambda p: (p.x, p.y))
    if len(pts) == 1:
        return ConvexPolygon(vertices=pts)

    def cadena(secuencia: List[Point]) -> List[Point]:
        resultado: List[Point] = []
        for p in secuencia:
            while len(resultado) >= 2 and cross(resultado[-2].xy(), resultado[-1].xy(), p.xy()) <= 0.0:
                resultado.pop()
            resultado.append(p)
        return resultado

    inferior = cadena(pts)
    superior = cadena(list(reversed(pts)))
    return ConvexPolygon(vertices=inferior[:-1] + superior[:-1])


def perimeter(poly: ConvexPolygon) -> float:
    """
    Perímetro de un polígono convexo.

    Un segmento de longitud l tiene perímetro 2l (se recorre en ambos
    sentidos) y un punto tiene perímetro 0.
    """
    v = poly.coords()
    m = len(v)
    if m == 1:
        return 0.0
    if m == 2:
        return 2.0 * math.hypot(v[1][0] - v[0][0], v[1][1] - v[0][1])
    return sum(math.hypot(v[(i + 1) % m][0] - v[i][0], v[(i + 1) % m][1] - v[i][1]) for i in range(m))


def area(poly: ConvexPolygon) -> float:
    """Área por la fórmula del cordón; cero para segmentos y puntos."""
    v = poly.coords()
    m = len(v)
    if m < 3:
        return 0.0
    doble = sum(v[i][0] * v[(i + 1) % m][1] - v[(i + 1) % m][0] * v[i][1] for i in range(m))
    return abs(doble) / 2.0


def to_shapely(poly: ConvexPolygon):
    """Convertir a la geometría shapely de la dimensión correspondiente."""
    coords = poly.coords()
    if len(coords) == 1:
        return ShapelyPoint(coords[0])
    if len(coords) == 2:
        return LineString(coords)
    return Polygon(coords)


def _bboxes_disjoint(p: ConvexPolygon, q: ConvexPolygon) -> bool:
    px0, py0, px1, py1 = p.bounds()
    qx0, qy0, qx1, qy1 = q.bounds()
    return px1 < qx0 or qx1 < px0 or py1 < qy0 or qy1 < py0


def convex_intersection(p: ConvexPolygon, q: ConvexPolygon) -> Optional[ConvexPolygon]:
    """
    Intersección de dos polígonos convexos.

    Args:
        p: Primer polígono
        q: Segundo polígono

    Returns:
        Región convexa de la intersección (puede ser un segmento o un punto si
        solo se tocan los bordes) o None si son disjuntos
    """
    if _bboxes_disjoint(p, q):
        return None
    geometria = to_shapely(p).intersection(to_shapely(q))
    if geometria.is_empty:
        return None
    coords = shapely.get_coordinates(geometria)
    return convex_hull([Point(x=float(x), y=float(y)) for x, y in coords])


def overlaps(p: ConvexPolygon, q: ConvexPolygon) -> bool:
    """Verdadero si el área de p ∩ q supera la tolerancia de área."""
    if p.is_degenerate or q.is_degenerate or _bboxes_disjoint(p, q):
        return False
    return to_shapely(p).intersection(to_shapely(q)).area > AREA_TOLERANCE


def separating_line(p: ConvexPolygon, q: ConvexPolygon) -> Tuple[Point, Point]:
    """
    Recta separadora (tangente) determinada por dos vértices de V(p) ∪ V(q).

    Args:
        p: Primer polígono
        q: Segundo polígono, disjunto de p

    Returns:
        Par de vértices cuya recta deja a p débilmente de un lado y a q del otro

    Raises:
        PolygonsNotDisjointError: Si los polígonos comparten algún punto
    """
    if not to_shapely(p).disjoint(to_shapely(q)):
        raise PolygonsNotDisjointError("Los polígonos no son disjuntos; no existe recta separadora")

    candidatos = list(p.vertices) + list(q.vertices)
    for a, b in combinations(candidatos, 2):
        if (a.x, a.y) == (b.x, b.y):
            continue
        lados_p = [line_side(a, b, v) for v in p.vertices]
        lados_q = [line_side(a, b, v) for v in q.vertices]
        if max(lados_p) <= ORIENTATION_TOLERANCE and min(lados_q) >= -ORIENTATION_TOLERANCE:
            return (a, b)
        if min(lados_p) >= -ORIENTATION_TOLERANCE and max(lados_q) <= ORIENTATION_TOLERANCE:
            return (a, b)

    raise MCPError(f"No se encontró recta separadora entre {p.coords()} y {q.coords()}")


def union_perimeter(p: ConvexPolygon, q: ConvexPolygon) -> float:
    """
    Perímetro de L = p ∪ q, trazado sobre la frontera de la unión.

    Raises:
        NonOverlappingError: Si p y q no se traslapan
    """
    if not overlaps(p, q):
        raise NonOverlappingError("union_perimeter requiere polígonos que se traslapen")
    return to_shapely(p).union(to_shapely(q)).exterior.length


def contains_point(poly: ConvexPolygon, pt: Coord, strict: bool = False, tol: float = ORIENTATION_TOLERANCE) -> bool:
    """
    Prueba de pertenencia a un polígono convexo antihorario.

    Args:
        poly: Polígono convexo
        pt: Punto a probar
        strict: Si es verdadero exige estar en el interior (a más de `tol` del borde)
        tol: Tolerancia de orientación

    Returns:
        True si el punto pertenece al polígono
    """
    v = poly.coords()
    m = len(v)
    if m == 1:
        return not strict and math.hypot(pt[0] - v[0][0], pt[1] - v[0][1]) <= tol
    if m == 2:
        if strict:
            return False
        if abs(cross(v[0], v[1], pt)) > tol:
            return False
        return (min(v[0][0], v[1][0]) - tol <= pt[0] <= max(v[0][0], v[1][0]) + tol
                and min(v[0][1], v[1][1]) - tol <= pt[1] <= max(v[0][1], v[1][1]) + tol)
    for i in range(m):
        lado = cross(v[i], v[(i + 1) % m], pt)
        if strict and lado <= tol:
            return False
        if not strict and lado < -tol:
            return False
    return True


def _boundary_crossings(pc: List[Coord], qc: List[Coord]) -> List[Dict]:
    """Cruces transversales entre los bordes de dos polígonos convexos."""
    cruces = []
    mp, mq = len(pc), len(qc)
    for i in range(mp):
        a, b = pc[i], pc[(i + 1) % mp]
        rx, ry = b[0] - a[0], b[1] - a[1]
        for j in range(mq):
            c, d = qc[j], qc[(j + 1) % mq]
            sx, sy = d[0] - c[0], d[1] - c[1]
            denom = rx * sy - ry * sx
            wx, wy = c[0] - a[0], c[1] - a[1]
            if abs(denom) <= ORIENTATION_TOLERANCE:
                # Paralelos: solo es degenerado si además son colineales y se solapan
                if abs(wx * ry - wy * rx) > ORIENTATION_TOLERANCE:
                    continue
                largo2 = rx * rx + ry * ry
                t0 = (wx * rx + wy * ry) / largo2
                t1 = ((d[0] - a[0]) * rx + (d[1] - a[1]) * ry) / largo2
                if max(t0, t1) > PARAM_TOLERANCE and min(t0, t1) < 1.0 - PARAM_TOLERANCE:
                    raise GeneralPositionError(f"Aristas colineales superpuestas: {a}-{b} y {c}-{d}")
                continue
            t = (wx * sy - wy * sx) / denom
            u = (wx * ry - wy * rx) / denom
            if t < -PARAM_TOLERANCE or t > 1.0 + PARAM_TOLERANCE or u < -PARAM_TOLERANCE or u > 1.0 + PARAM_TOLERANCE:
                continue
            if min(t, 1.0 - t, u, 1.0 - u) <= PARAM_TOLERANCE:
                raise GeneralPositionError(f"Contacto en un vértice entre {a}-{b} y {c}-{d}")
            cruces.append({
                "pe": i, "t": t, "qe": j, "u": u,
                "xy": (a[0] + t * rx, a[1] + t * ry),
            })
    return cruces


def _arc_vertices(coords: List[Coord], inicio: Tuple[int, float], fin: Tuple[int, float]) -> List[Coord]:
    """Vértices estrictamente entre dos posiciones (arista, parámetro) recorriendo en sentido antihorario."""
    m = len(coords)
    (e0, t0), (e1, t1) = inicio, fin
    if e0 == e1 and t1 > t0:
        return []
    vertices = []
    e = e0
    while True:
        e = (e + 1) % m
        vertices.append(coords[e])
        if e == e1:
            break
    return vertices


def _first_piece_midpoint(coords: List[Coord], inicio: Tuple[int, float], fin: Tuple[int, float], xy0: Coord, xy1: Coord) -> Coord:
    """Punto medio del primer tramo del arco que empieza en `inicio`."""
    m = len(coords)
    (e0, t0), (e1, t1) = inicio, fin
    destino = xy1 if (e0 == e1 and t1 > t0) else coords[(e0 + 1) % m]
    return ((xy0[0] + destino[0]) / 2.0, (xy0[1] + destino[1]) / 2.0)


def _arcs_outside(coords: List[Coord], otro: ConvexPolygon, orden: List[int], cruces: List[Dict], clave_e: str, clave_t: str) -> Dict[Tuple[int, int], List[Coord]]:
    """Arcos del borde entre cruces consecutivos que quedan fuera del otro polígono."""
    arcos = {}
    total = len(orden)
    for s in range(total):
        a, b = orden[s], orden[(s + 1) % total]
        inicio = (cruces[a][clave_e], cruces[a][clave_t])
        fin = (cruces[b][clave_e], cruces[b][clave_t])
        medio = _first_piece_midpoint(coords, inicio, fin, cruces[a]["xy"], cruces[b]["xy"])
        if not contains_point(otro, medio):
            arcos[(a, b)] = [cruces[a]["xy"]] + _arc_vertices(coords, inicio, fin) + [cruces[b]["xy"]]
    return arcos


def _cap_polygon(arco: List[Coord], ids: Dict[Coord, int]) -> ConvexPolygon:
    return convex_hull([Point(x=x, y=y, id=ids.get((x, y), -1)) for x, y in arco])


def petal_decomposition(p: ConvexPolygon, q: ConvexPolygon) -> PetalDecomposition:
    """
    Descomposición en pétalos de dos polígonos convexos que se traslapan.

    Args:
        p: Polígono P (envolvente del clique C)
        q: Polígono Q (envolvente del clique D)

    Returns:
        Pétalos de P y de Q intercalados en sentido horario, cruces en orden
        cíclico e intersección I = P ∩ Q

    Raises:
        NonOverlappingError: Si no se traslapan
        ContainmentError: Si un polígono está contenido en el otro (sin cruces)
        GeneralPositionError: Si los bordes se tocan tangencialmente o en vértices
    """
    if not overlaps(p, q):
        raise NonOverlappingError("petal_decomposition requiere polígonos que se traslapen")

    pc, qc = p.coords(), q.coords()
    cruces = _boundary_crossings(pc, qc)
    if not cruces:
        raise ContainmentError("Un polígono está contenido en el otro; no hay pétalos")
    if len(cruces) % 2:
        raise GeneralPositionError(f"Número impar de cruces ({len(cruces)})")

    # Cada cruce se identifica por su rango a lo largo del borde de P
    cruces.sort(key=lambda c: (c["pe"], c["t"]))
    total = len(cruces)
    orden_p = list(range(total))
    orden_q = sorted(orden_p, key=lambda c: (cruces[c]["qe"], cruces[c]["u"]))

    arcos_p = _arcs_outside(pc, q, orden_p, cruces, "pe", "t")
    arcos_q = _arcs_outside(qc, p, orden_q, cruces, "qe", "u")

    k = total // 2
    if len(arcos_p) != k or len(arcos_q) != k:
        raise GeneralPositionError(f"Pétalos inconsistentes: {len(arcos_p)} de P y {len(arcos_q)} de Q para {total} cruces")

    inicio = 0 if (0, 1) in arcos_p else 1
    ccw = [(inicio + s) % total for s in range(total)]
    petalos_p_ccw, petalos_q_ccw = [], []
    for i in range(k):
        clave_x = (ccw[2 * i], ccw[(2 * i + 1) % total])
        clave_y = (ccw[(2 * i + 1) % total], ccw[(2 * i + 2) % total])
        if clave_x not in arcos_p or clave_y not in arcos_q:
            raise GeneralPositionError("Los pétalos de P y Q no alternan alrededor de la intersección")
        petalos_p_ccw.append(arcos_p[clave_x])
        petalos_q_ccw.append(arcos_q[clave_y])

    ids = {(v.x, v.y): v.id for v in list(p.vertices) + list(q.vertices)}
    petals_p = [_cap_polygon(petalos_p_ccw[(-i) % k], ids) for i in range(k)]
    petals_q = [_cap_polygon(petalos_q_ccw[(-i - 1) % k], ids) for i in range(k)]
    crossings = [Point(x=cruces[ccw[(1 - m) % total]]["xy"][0], y=cruces[ccw[(1 - m) % total]]["xy"][1]) for m in range(total)]

    interseccion = convex_intersection(p, q)
    logger.debug(f"Descomposición en pétalos: k={k}, {total} cruces")
    return PetalDecomposition(petals_p=petals_p, petals_q=petals_q, crossings=crossings, intersection=interseccion)


def petal_members(points: Sequence[Point], petals: Sequence[ConvexPolygon], other: ConvexPolygon) -> List[List[int]]:
    """
    Asignar puntos a pétalos.

    Args:
        points: Puntos del clique cuyo polígono contiene los pétalos
        petals: Pétalos (envolventes) de ese polígono
        other: El otro polígono; los puntos en su interior no están en ningún pétalo

    Returns:
        Para cada pétalo, los ids de los puntos que contiene. Un punto fuera de
        `other` que por redondeo no cae en ningún pétalo se asigna al más cercano.
    """
    miembros: List[List[int]] = [[] for _ in petals]
    for pt in points:
        if contains_point(other, pt.xy()):
            continue
        dentro = [i for i, petalo in enumerate(petals) if contains_point(petalo, pt.xy())]
        if dentro:
            miembros[dentro[0]].append(pt.id)
            continue
        punto = ShapelyPoint(pt.xy())
        cercano = min(range(len(petals)), key=lambda i: to_shapely(petals[i]).distance(punto))
        miembros[cercano].append(pt.id)
    return miembros


def chord_length(a: Point, b: Point) -> float:
    return math.hypot(a.x - b.x, a.y - b.y)
