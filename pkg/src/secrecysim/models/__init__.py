"""Secrecy models for six 5G technologies."""

from .beam import BeamScenario, BeamformerResult, beam_secrecy, noise_power, optimal_beamformer
from .d2d import D2dScenario, channel_rate, d2d_secrecy, normalized_gain, phase_one_sinr, phase_two_sinrs
from .iot import IotScenario, iot_sop, received_sinr
from .mimo import MimoScenario, PowerBudget, channel_coefficient, mimo_secrecy, power_budget
from .sharing import SharingScenario, sensing_probabilities, sharing_secrecy
from .udn import UdnEstimate, UdnField, udn_average_secrecy
