"""Command handlers behind the CLI subcommands."""

import logging
from typing import Optional, Union

from src.core.defining_graph import DefiningGraph, load_defining_graph
from src.core.models import RunConfig
from src.core.orbit_graphs import CubicalBall, OrbitGraph
from src.utils.output_writer import OutputWriter

logger = logging.getLogger(__name__)


class CommandHandler:
    """Runs one validated command and renders its payload.

    Each ``cmd_*`` method returns the exact text that is written to stdout
    or to ``--out``; nothing else reaches stdout.
    """

    def __init__(self, config: RunConfig):
        """Initialize the handler.

        Args:
            config: Options already validated by RunConfig
        """
        self.config = config
        self._graph: Optional[DefiningGraph] = None

    @property
    def graph(self) -> DefiningGraph:
        if self._graph is None:
            self._graph = load_defining_graph(self.config.input_path, strict=self.config.strict)
            logger.info(f"Loaded defining graph with {len(self._graph.vertices)} vertices "
                        f"from {self.config.input_path}")
        return self._graph

    def run(self) -> str:
        handlers = {
            'classify': self.cmd_classify,
            'cube-table': self.cmd_cube_table,
            'ball': self.cmd_ball,
            'delta': self.cmd_delta,
            'qi': self.cmd_qi,
            'certify': self.cmd_certify,
        }
        return handlers[self.config.command]()

    def _json(self, payload) -> str:
        return OutputWriter.render_json(payload)

    def _csv(self, header, rows) -> str:
        return OutputWriter.render_csv(header, rows)

    def cmd_classify(self) -> str:
        from src.core.classifier import verdict
        return self._json(verdict(self.graph).to_dict())

    def cmd_cube_table(self) -> str:
        from src.core.hyperbolic_cube import angle_table
        rows = angle_table(list(self.config.epsilons))
        if self.config.fmt == 'json':
            return self._json([{'epsilon': e, 'theta': t, 'margin': m} for e, t, m in rows])
        return self._csv(('epsilon', 'theta', 'margin'), rows)

    def build_ball(self) -> Union[OrbitGraph, CubicalBall]:
        """Ball of the requested kind around the identity."""
        from src.core.orbit_graphs import (
            cayley_ball,
            coned_off_cayley_ball,
            davis_ball,
            deligne_ball,
            maximal_spherical_family,
        )
        from src.core.word_oracles import make_oracle

        cfg = self.config
        if cfg.kind == 'deligne':
            return deligne_ball(self.graph, cfg.radius, cfg.cap)
        if cfg.kind == 'davis':
            if cfg.oracle == 'raag':
                raise ValueError("Davis balls need the coxeter or finite oracle")
            kind = 'coxeter' if cfg.oracle == 'auto' else cfg.oracle
            return davis_ball(self.graph, cfg.radius, cfg.cap, make_oracle(self.graph, kind))
        oracle = make_oracle(self.graph, cfg.oracle)
        if cfg.kind == 'coned':
            return coned_off_cayley_ball(oracle, maximal_spherical_family(self.graph), cfg.radius, cfg.cap)
        return cayley_ball(oracle, cfg.radius, cfg.cap)

    def cmd_ball(self) -> str:
        from src.utils.graph_export import to_dot, to_edge_list
        ball = self.build_ball()
        if self.config.fmt == 'dot':
            return to_dot(ball, name=self.config.kind)
        if self.config.fmt == 'csv':
            return to_edge_list(ball)
        return self._json(ball.summary())

    def cmd_delta(self) -> str:
        from src.core.hyperbolicity import delta_four_point
        ball = self.build_ball()
        estimate = delta_four_point(ball, self.config.sample, self.config.seed)
        return self._json({**estimate.to_dict(), 'ball': ball.summary()})

    def cmd_qi(self) -> str:
        """Orbit map from the coned-off ball to the Deligne 1-skeleton ball."""
        from src.core.hyperbolicity import milnor_svarc_bound, qi_fit
        from src.core.orbit_graphs import coned_off_cayley_ball, deligne_ball, maximal_spherical_family, orbit_map
        from src.core.word_oracles import RightAngledArtinOracle

        cfg = self.config
        family = maximal_spherical_family(self.graph)
        deligne = deligne_ball(self.graph, cfg.radius, cfg.cap)
        coned = coned_off_cayley_ball(RightAngledArtinOracle(self.graph), family, cfg.radius, cfg.cap)
        mapping = orbit_map(coned, deligne)
        interior = cfg.radius // 2 if cfg.interior is None else cfg.interior

        fit = qi_fit(coned, deligne, mapping, interior)
        fit.extra = {
            'interior_radius': interior,
            'radius': cfg.radius,
            'family': [list(h) for h in family],
            'milnor_svarc': milnor_svarc_bound(coned, deligne, family, mapping, interior),
        }
        if cfg.fmt == 'csv':
            return self._csv(('d1', 'd2'), fit.table)
        return self._json(fit.to_dict())

    def cmd_certify(self) -> str:
        from src.core.certificate import cat_certificate
        return self._json(cat_certificate(self.graph, float(self.config.epsilons[0])).to_dict())
