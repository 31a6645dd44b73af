"""Exact and asymptotic mixing analysis of riffle shuffles of decks with
repeated cards."""
from .combinatorics import (BigRational, DeckSpec, enumerate_arrangements,
                            eulerian_numbers, multinomial, rising_sequences)
from .errors import CapacityError, InputError
from .exact import (DistanceReport, TransitionMatrix, alternating_tv,
                    bd_probability, bottom_card_distribution,
                    full_deck_distances, general_sep,
                    least_likely_probability, matrix_properties_check,
                    redblack_tv, redblack_word_probability,
                    single_card_matrix, tracked_card_distances)
from .asymptotics import (BoundPair, RotEstimate, bottom_card_prob_bounds,
                          bottom_card_sep_bounds, bottom_card_tv_bounds,
                          eulerian_gf_coefficient, rule_of_thumb_sep,
                          s_m_approx, s_m_exact)
from .oracle import (QuotientChain, brute_distances, build_quotient_chain,
                     exhaustive_shuffle_distribution, gilbreath_classify,
                     verify_convolution_power)
from .montecarlo import (EmpiricalReport, SamplerConfig, estimate_distances,
                         sample_a_shuffle)

__version__ = "0.1.0"
