from gstbc_detection.channel_model.channel import (
    ChannelMatrix,
    EquivalentChannel,
    NoiseSpec,
    ReceivedVector,
    SymbolVector,
    alamouti_codeword,
    build_equivalent,
    generate_channel,
    stack_slots,
    transmit,
)
from gstbc_detection.channel_model.modulation import (
    BITS_PER_SYMBOL,
    Slicer,
    qpsk_demodulate,
    qpsk_modulate,
    qpsk_slice,
    random_bits,
)
from gstbc_detection.channel_model.random_streams import (
    Stream,
    complex_normal,
    make_rng,
)
