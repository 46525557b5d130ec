# Tests package for nearfield-noise
