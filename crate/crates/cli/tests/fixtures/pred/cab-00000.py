box_0 = Box(position=(1074.6, 315.5, 1158.2), size=(2166, 570, 2286), rotation=0)
model_0 = Model(id="M-BB01", box=box_0, N=2, DBXX=2, NKA=948, NKB=1164)
box_1 = Box(position=(962.2, 297.4, 1155.2), size=(18, 570, 2250), rotation=0)
model_1 = Model(id="M-PANEL", box=box_1)
box_2 = Box(position=(534.2, 307.4, 1531.6), size=(948, 570, 18), rotation=0)
model_2 = Model(id="M-SHELF-A", box=box_2)
box_3 = Box(position=(1562.2, -1.6, 1151.6), size=(1164, 18, 2250), rotation=0)
model_3 = Model(id="M-DOOR", box=box_3)
box_4 = Box(position=(1557.7, 289.7, 481.8), size=(1164, 552, 18), rotation=0)
model_4 = Model(id="M-SHELF-F", box=box_4)
box_5 = Box(position=(1587.6, 269.6, 917.5), size=(1164, 552, 18), rotation=0)
model_5 = Model(id="M-SHELF-F", box=box_5)
box_6 = Box(position=(1543.4, 310.4, 1394.6), size=(1164, 552, 18), rotation=0)
model_6 = Model(id="M-SHELF-F", box=box_6)
box_7 = Box(position=(1588.4, 319.4, 1848), size=(1164, 552, 18), rotation=0)
model_7 = Model(id="M-SHELF-F", box=box_7)
