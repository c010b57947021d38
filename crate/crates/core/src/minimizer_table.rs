// Nonzero amplitudes of the nine-qubit state, each equal to sign / (8 * sqrt 2).
// Index bits: qubit 1 is the most significant. The state splits into four blocks
// keyed by a coset of {0000, 0101, 1010, 1111} on qubits 1-4:
//   (+0000 +0101 -1010 -1111) x (+00000 +00101 +01001 +01100 +10010 -10111 -11011 +11110)
//   (+0001 +0100 +1011 +1110) x (+00001 -00100 -01000 +01101 +10011 +10110 +11010 +11111)
//   (+0010 -0111 +1000 -1101) x (+00011 +00110 -01010 -01111 +10001 -10100 +11000 -11101)
//   (+0011 -0110 -1001 +1100) x (+00010 -00111 +01011 -01110 +10000 +10101 -11001 -11100)
pub(crate) static MINIMIZER_TABLE: [(u16, i8); 128] = [
    (0, 1),
    (5, 1),
    (9, 1),
    (12, 1),
    (18, 1),
    (23, -1),
    (27, -1),
    (30, 1),
    (33, 1),
    (36, -1),
    (40, -1),
    (45, 1),
    (51, 1),
    (54, 1),
    (58, 1),
    (63, 1),
    (67, 1),
    (70, 1),
    (74, -1),
    (79, -1),
    (81, 1),
    (84, -1),
    (88, 1),
    (93, -1),
    (98, 1),
    (103, -1),
    (107, 1),
    (110, -1),
    (112, 1),
    (117, 1),
    (121, -1),
    (124, -1),
    (129, 1),
    (132, -1),
    (136, -1),
    (141, 1),
    (147, 1),
    (150, 1),
    (154, 1),
    (159, 1),
    (160, 1),
    (165, 1),
    (169, 1),
    (172, 1),
    (178, 1),
    (183, -1),
    (187, -1),
    (190, 1),
    (194, -1),
    (199, 1),
    (203, -1),
    (206, 1),
    (208, -1),
    (213, -1),
    (217, 1),
    (220, 1),
    (227, -1),
    (230, -1),
    (234, 1),
    (239, 1),
    (241, -1),
    (244, 1),
    (248, -1),
    (253, 1),
    (259, 1),
    (262, 1),
    (266, -1),
    (271, -1),
    (273, 1),
    (276, -1),
    (280, 1),
    (285, -1),
    (290, -1),
    (295, 1),
    (299, -1),
    (302, 1),
    (304, -1),
    (309, -1),
    (313, 1),
    (316, 1),
    (320, -1),
    (325, -1),
    (329, -1),
    (332, -1),
    (338, -1),
    (343, 1),
    (347, 1),
    (350, -1),
    (353, 1),
    (356, -1),
    (360, -1),
    (365, 1),
    (371, 1),
    (374, 1),
    (378, 1),
    (383, 1),
    (386, 1),
    (391, -1),
    (395, 1),
    (398, -1),
    (400, 1),
    (405, 1),
    (409, -1),
    (412, -1),
    (419, -1),
    (422, -1),
    (426, 1),
    (431, 1),
    (433, -1),
    (436, 1),
    (440, -1),
    (445, 1),
    (449, 1),
    (452, -1),
    (456, -1),
    (461, 1),
    (467, 1),
    (470, 1),
    (474, 1),
    (479, 1),
    (480, -1),
    (485, -1),
    (489, -1),
    (492, -1),
    (498, -1),
    (503, 1),
    (507, 1),
    (510, -1),
];
